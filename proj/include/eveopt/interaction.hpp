#pragma once

#include "eveopt/qcore.hpp"

#include <optional>
#include <string>

namespace eveopt {

/// Bob's error rates per signal basis. Both live in [0, 1/2]; beyond the
/// crossover the mixing weights lose their meaning, so out-of-range values
/// are rejected everywhere.
struct DisturbancePair {
  double d_xy = 0.0;
  double d_uv = 0.0;
};

void require_valid(const DisturbancePair& d);
bool equal_error(const DisturbancePair& d, double tol = kConstructTol);

/// Mixing weights (√(1−d) ± √d)/√2. They satisfy
///   d_plus² + d_minus² = 1,
///   2·d_plus·d_minus  = 1 − 2d,
///   d_plus² − d_minus² = 2√(d(1−d)).
struct DCoefficients {
  double d_plus;
  double d_minus;
};

DCoefficients d_coefficients(double d);

/// Eve-side Schmidt components (ξ_x, ξ_y, ζ_x, ζ_y) of the post-interaction
/// states, stored in canonical probe coordinates. All four are unit and
/// span{ξ} ⊥ span{ζ}. basis_label records provenance only.
struct InteractionVectors {
  Ket xi_x, xi_y, zeta_x, zeta_y;
  std::string basis_label = "canonical";
};

void validate(const InteractionVectors& iv, double tol = kVerifyTol);

/// Post-interaction joint states, Alice-major 8-dim coordinates. U and V are
/// the same states for conjugate-basis signals, (X ± Y)/√2.
struct JointStates {
  Ket X, Y;
  std::optional<Ket> U, V;
};

using RotationMatrix = Eigen::Matrix4d;

bool is_orthogonal(const RotationMatrix& r, double tol = kVerifyTol);

/// The unique optimal form in a given orthonormal basis (E0..E3):
///   ξ_x = D+·E0 + D−·E1,  ξ_y = D−·E0 + D+·E1,
///   ζ_x = D+·E2 + D−·E3,  ζ_y = D−·E2 + D+·E3,
/// with D± from d.d_uv. Components come out in the ambient coordinates of
/// the supplied basis kets.
InteractionVectors build_optimal_general(const DisturbancePair& d,
                                         const std::array<Ket, 4>& basis);

/// The unequal-error-rate instance: ξ's supported on (E0, E3), ζ's on (E2, E1).
InteractionVectors build_fuchs_unequal(const DisturbancePair& d);

/// The equal-error-rate instance (d_xy = d_uv = d): ξ_x = E0, ζ_x = E2,
/// ξ_y = 2D+D−·E0 + (D+²−D−²)·E1, ζ_y likewise on (E2, E3).
InteractionVectors build_fuchs_equal(double d);

/// One-parameter family over the block rotation with parameter a in [0, 1];
/// equals build_rotated(d, one_param_rotation(a)).
InteractionVectors build_one_param(const DisturbancePair& d, double a);

RotationMatrix one_param_rotation(double a);

/// Optimal interaction in the basis obtained by applying the orthogonal
/// rotation r to the canonical axes (row i of r = coordinates of E_i).
InteractionVectors build_rotated(const DisturbancePair& d, const RotationMatrix& r);

/// X = √(1−d_xy)|x⟩⊗ξ_x + √(d_xy)|y⟩⊗ζ_x and the y-signal analogue; with
/// include_uv also U = (X+Y)/√2 and V = (X−Y)/√2.
JointStates joint_states(const InteractionVectors& iv, const DisturbancePair& d,
                         bool include_uv = true);

/// (ξ_u, ξ_v, ζ_u, ζ_v) of the same interaction as seen from the conjugate
/// signal basis, returned in the xi_x/xi_y/zeta_x/zeta_y slots in that order.
/// d must be the interaction's own disturbance pair; d_uv = 0 is rejected
/// (the ζ normalization divides by √d_uv).
InteractionVectors uv_interaction_vectors(const InteractionVectors& iv,
                                          const DisturbancePair& d);

/// Reads (d_xy, d_uv) back off the joint states; requires U and V present.
DisturbancePair measure_disturbance(const JointStates& js);

}  // namespace eveopt
