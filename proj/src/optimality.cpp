#include "eveopt/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eveopt {

double gain_bound(double d_other) {
  if (!(d_other >= 0.0 && d_other <= 0.5)) {
    throw std::invalid_argument("gain_bound: d must lie in [0, 1/2]");
  }
  return 2.0 * std::sqrt(d_other * (1.0 - d_other));
}

double mi_phi(double z) {
  if (!(z >= 0.0 && z <= 1.0)) {
    throw std::invalid_argument("mi_phi: z must lie in [0, 1]");
  }
  const double hi = (1.0 + z) * std::log1p(z);
  const double lo = (z < 1.0) ? (1.0 - z) * std::log1p(-z) : 0.0;
  return hi + lo;
}

double mi_bound(double d_other) {
  return 0.5 * mi_phi(gain_bound(d_other));
}

std::array<double, 4> theoretical_eigenvalues(const DisturbancePair& d) {
  require_valid(d);
  const double s = std::sqrt(d.d_uv * (1.0 - d.d_uv));
  const double g0 = s * (1.0 - d.d_xy);
  const double g2 = s * d.d_xy;
  return {g0, -g0, g2, -g2};
}

double ConditionReport::max_residual() const {
  double m = 0.0;
  for (int l = 0; l < 4; ++l) m = std::max({m, residual_u[l], residual_v[l]});
  return m;
}

namespace {

// Unit vector of a rank-1 projector; rejects anything else.
Ket projector_axis(const Operator& element, double tol) {
  const auto eig = hermitian_eigensystem(element, tol);
  if (std::abs(eig.values[0] - 1.0) > 1e-8 ||
      (eig.values.size() > 1 && std::abs(eig.values[1]) > 1e-8)) {
    throw std::invalid_argument("expected a rank-1 projector POVM element");
  }
  return eig.vectors[0];
}

}  // namespace

ConditionReport check_optimality_conditions(const JointStates& js, const Povm& povm,
                                            const DisturbancePair& d, double tol) {
  require_valid(d);
  if (!js.U || !js.V) {
    throw std::invalid_argument("check_optimality_conditions: U and V components required");
  }
  if (povm.elements.size() != 4) {
    throw std::invalid_argument("check_optimality_conditions: expected 4 outcomes");
  }
  const double s = 1.0 / std::sqrt(2.0);
  const Ket u = ket2(s, s);
  const Ket v = ket2(s, -s);
  const double ratio = std::sqrt(d.d_uv / (1.0 - d.d_uv));

  ConditionReport rep;
  rep.degenerate = d.d_uv <= kConstructTol;
  bool ok = true;
  for (int l = 0; l < 4; ++l) {
    const Ket e = projector_axis(povm.elements[static_cast<std::size_t>(l)], 1e-9);
    // B_q (x) E_l |S> = <q (x) e | S> * (q (x) e), so only the coefficients matter.
    const Ket ue = tensor_product(u, e);
    const Ket ve = tensor_product(v, e);
    const Complex c_uu = ue.dot(*js.U);
    const Complex c_vu = ue.dot(*js.V);
    const Complex c_uv = ve.dot(*js.U);
    const Complex c_vv = ve.dot(*js.V);

    const double fit = (std::conj(c_vu) * c_uu + std::conj(c_uv) * c_vv).real();
    const int eps = fit >= 0.0 ? 1 : -1;
    rep.epsilon[l] = eps;
    rep.residual_u[l] = std::abs(c_vu - static_cast<double>(eps) * ratio * c_uu);
    rep.residual_v[l] = std::abs(c_uv - static_cast<double>(eps) * ratio * c_vv);
    ok = ok && rep.residual_u[l] < tol && rep.residual_v[l] < tol;
  }
  rep.verdict = ok;
  return rep;
}

Eigen::Matrix4d optimal_mixing_pattern(double d_uv) {
  const auto [dp, dm] = d_coefficients(d_uv);
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  p(0, 0) = dp;  p(0, 1) = dm;
  p(1, 0) = dm;  p(1, 1) = dp;
  p(2, 2) = dp;  p(2, 3) = dm;
  p(3, 2) = dm;  p(3, 3) = dp;
  return p;
}

CanonicalForm canonicalize(const InteractionVectors& iv, const DisturbancePair& d,
                           double cluster_tol, double accept_tol) {
  require_valid(d);
  validate(iv);
  const JointStates js = joint_states(iv, d, false);
  const Operator gamma =
      gamma_operator(eve_density(js, Signal::X), eve_density(js, Signal::Y));
  const EigenSystem eig = hermitian_eigensystem(gamma, cluster_tol);

  CanonicalForm form;
  // Descending spectrum of an optimal interaction is (g0, g2, -g2, -g0);
  // slots want (g0, -g0, g2, -g2).
  form.permutation = {0, 3, 1, 2};

  for (int i = 0; i + 1 < 4; ++i) {
    if (eig.values[i] - eig.values[i + 1] < cluster_tol) form.degenerate = true;
  }

  const Ket* anchors[] = {&iv.xi_x, &iv.xi_x, &iv.zeta_x, &iv.zeta_x};
  form.eigenbasis.resize(4);
  for (int slot = 0; slot < 4; ++slot) {
    const int src = form.permutation[static_cast<std::size_t>(slot)];
    Ket e = eig.vectors[static_cast<std::size_t>(src)];
    form.eigenvalues[static_cast<std::size_t>(slot)] = eig.values[src];
    const Complex overlap = e.dot(*anchors[slot]);
    double sign = 1.0;
    if (std::abs(overlap) <= cluster_tol) {
      form.degenerate = true;  // sign anchor vanishes; representative not unique
    } else if (overlap.real() < 0.0) {
      sign = -1.0;
    }
    form.signs[static_cast<std::size_t>(slot)] = sign;
    form.eigenbasis[static_cast<std::size_t>(slot)] = sign * e;
  }

  const Ket* rows[] = {&iv.xi_x, &iv.xi_y, &iv.zeta_x, &iv.zeta_y};
  const Eigen::Matrix4d pattern = optimal_mixing_pattern(d.d_uv);
  form.max_deviation = 0.0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const Complex coeff = form.eigenbasis[static_cast<std::size_t>(c)].dot(*rows[r]);
      form.coefficients(r, c) = coeff.real();
      form.max_deviation = std::max(form.max_deviation, std::abs(coeff - pattern(r, c)));
    }
  }
  form.matches_pattern = !form.degenerate && form.max_deviation < accept_tol;
  return form;
}

EavesdropReport full_report(const InteractionVectors& iv, const DisturbancePair& d) {
  EavesdropReport rep;
  rep.d_requested = d;
  const JointStates js = joint_states(iv, d, true);
  rep.d_measured = measure_disturbance(js);
  // Clamp rounding noise so downstream domain checks stay happy.
  rep.d_measured.d_xy = std::clamp(rep.d_measured.d_xy, 0.0, 0.5);
  rep.d_measured.d_uv = std::clamp(rep.d_measured.d_uv, 0.0, 0.5);

  rep.canonical = canonicalize(iv, d);
  const Povm povm = projector_povm(rep.canonical.eigenbasis);
  rep.stats = outcome_statistics(iv, d, povm);
  rep.conditions = check_optimality_conditions(js, povm, rep.d_measured);

  rep.bounds.g_bound = gain_bound(rep.d_measured.d_uv);
  rep.bounds.g_achieved = rep.stats.gain_total;
  rep.bounds.i_bound = mi_bound(rep.d_measured.d_uv);
  rep.bounds.i_achieved = rep.stats.mutual_info;

  rep.degenerate = rep.canonical.degenerate;
  rep.optimal = rep.conditions.verdict &&
                std::abs(rep.bounds.slack_g()) <= kAcceptTol &&
                std::abs(rep.bounds.slack_i()) <= kAcceptTol;
  return rep;
}

}  // namespace eveopt
