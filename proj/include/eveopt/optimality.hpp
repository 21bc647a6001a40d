#pragma once

#include "eveopt/measurement.hpp"

namespace eveopt {

/// 2√(d(1−d)): the ceiling on information gain in one basis given the
/// disturbance observed in the conjugate basis.
double gain_bound(double d_other);

/// φ(z) = (1+z)ln(1+z) + (1−z)ln(1−z), with the 0·ln 0 = 0 limit at z = 1.
double mi_phi(double z);

/// ½·φ(2√(d(1−d))) in nats: the mutual-information ceiling.
double mi_bound(double d_other);

/// Discrimination-operator spectrum of an optimal interaction, in slot order
/// (γ0, −γ0, γ2, −γ2) with γ0 = √(d_uv(1−d_uv))·(1−d_xy) and
/// γ2 = √(d_uv(1−d_uv))·d_xy.
std::array<double, 4> theoretical_eigenvalues(const DisturbancePair& d);

/// Residuals of the per-outcome optimality conditions
///   |V_λu⟩ = ε_λ √(d_uv/(1−d_uv)) |U_λu⟩,
///   |U_λv⟩ = ε_λ √(d_uv/(1−d_uv)) |V_λv⟩,
/// where |U_λu⟩ = (B_u ⊗ E_λ)|U⟩ etc. The sign ε_λ is fitted per outcome by
/// least squares rather than taken as input.
struct ConditionReport {
  std::array<int, 4> epsilon{};
  std::array<double, 4> residual_u{};
  std::array<double, 4> residual_v{};
  bool verdict = false;
  bool degenerate = false;  // d_uv = 0: the conditions hold trivially

  double max_residual() const;
};

ConditionReport check_optimality_conditions(const JointStates& js, const Povm& povm,
                                            const DisturbancePair& d,
                                            double tol = kAcceptTol);

/// The mixing pattern every optimal interaction shows in the eigenbasis of
/// its own discrimination operator; rows (ξ_x, ξ_y, ζ_x, ζ_y), columns slots.
Eigen::Matrix4d optimal_mixing_pattern(double d_uv);

/// Interaction re-expressed in that eigenbasis. Slots are assigned by
/// eigenvalue (largest → E0, most negative → E1, second positive → E2,
/// remaining → E3) and signs fixed so ⟨E0|ξ_x⟩, ⟨E1|ξ_x⟩, ⟨E2|ζ_x⟩,
/// ⟨E3|ζ_x⟩ ≥ 0. A clustered spectrum or vanishing sign anchor makes the
/// representative non-unique; that is flagged, never patched over.
struct CanonicalForm {
  Eigen::Matrix4d coefficients;       // Re⟨E_c | v_r⟩
  std::array<int, 4> permutation{};   // slot -> index in descending eigen order
  std::array<double, 4> signs{};      // sign applied to each slot's eigenvector
  std::array<double, 4> eigenvalues{};  // slot order
  std::vector<Ket> eigenbasis;        // slot order, sign-fixed
  bool degenerate = false;
  bool matches_pattern = false;
  double max_deviation = 0.0;         // vs. the optimal mixing pattern
};

CanonicalForm canonicalize(const InteractionVectors& iv, const DisturbancePair& d,
                           double cluster_tol = 1e-9, double accept_tol = kAcceptTol);

struct BoundReport {
  double g_bound = 0.0;
  double g_achieved = 0.0;
  double i_bound = 0.0;
  double i_achieved = 0.0;

  double slack_g() const { return g_bound - g_achieved; }
  double slack_i() const { return i_bound - i_achieved; }
};

/// Everything the pipeline can say about one interaction at one disturbance
/// pair: measured disturbances, bounds vs. achieved values under the optimal
/// POVM, per-outcome statistics, optimality-condition residuals and the
/// canonical form. Bounds use the measured d_uv, so they are valid for
/// non-optimal interactions as well.
struct EavesdropReport {
  DisturbancePair d_requested;
  DisturbancePair d_measured;
  BoundReport bounds;
  OutcomeStats stats;
  ConditionReport conditions;
  CanonicalForm canonical;
  bool degenerate = false;
  bool optimal = false;
};

EavesdropReport full_report(const InteractionVectors& iv, const DisturbancePair& d);

}  // namespace eveopt
