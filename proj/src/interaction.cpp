#include "eveopt/interaction.hpp"

#include <cmath>
#include <stdexcept>

namespace eveopt {

void require_valid(const DisturbancePair& d) {
  if (!(d.d_xy >= 0.0 && d.d_xy <= 0.5) || !(d.d_uv >= 0.0 && d.d_uv <= 0.5)) {
    throw std::invalid_argument("DisturbancePair: both rates must lie in [0, 1/2]");
  }
}

bool equal_error(const DisturbancePair& d, double tol) {
  return std::abs(d.d_xy - d.d_uv) <= tol;
}

DCoefficients d_coefficients(double d) {
  if (!(d >= 0.0 && d <= 0.5)) {
    throw std::invalid_argument("d_coefficients: d must lie in [0, 1/2]");
  }
  const double s = 1.0 / std::sqrt(2.0);
  return {s * (std::sqrt(1.0 - d) + std::sqrt(d)), s * (std::sqrt(1.0 - d) - std::sqrt(d))};
}

void validate(const InteractionVectors& iv, double tol) {
  const Ket* vecs[] = {&iv.xi_x, &iv.xi_y, &iv.zeta_x, &iv.zeta_y};
  const char* names[] = {"xi_x", "xi_y", "zeta_x", "zeta_y"};
  for (int i = 0; i < 4; ++i) {
    if (vecs[i]->size() != 4) {
      throw std::invalid_argument(std::string("InteractionVectors: ") + names[i] + " must have dimension 4");
    }
    if (!all_finite(*vecs[i])) {
      throw std::invalid_argument(std::string("InteractionVectors: ") + names[i] + " has non-finite components");
    }
    if (!is_unit(*vecs[i], tol)) {
      throw std::invalid_argument(std::string("InteractionVectors: ") + names[i] + " is not unit norm");
    }
  }
  for (const Ket* xi : {&iv.xi_x, &iv.xi_y}) {
    for (const Ket* zeta : {&iv.zeta_x, &iv.zeta_y}) {
      if (std::abs(xi->dot(*zeta)) > tol) {
        throw std::invalid_argument("InteractionVectors: xi span not orthogonal to zeta span");
      }
    }
  }
}

bool is_orthogonal(const RotationMatrix& r, double tol) {
  return (r.transpose() * r - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <= tol;
}

InteractionVectors build_optimal_general(const DisturbancePair& d,
                                         const std::array<Ket, 4>& basis) {
  require_valid(d);
  for (const Ket& b : basis) {
    if (b.size() != 4 || !is_unit(b)) {
      throw std::invalid_argument("build_optimal_general: basis kets must be unit, dimension 4");
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(basis[i].dot(basis[j])) > kVerifyTol) {
        throw std::invalid_argument("build_optimal_general: basis not orthonormal");
      }
    }
  }
  const auto [dp, dm] = d_coefficients(d.d_uv);
  InteractionVectors iv;
  iv.xi_x = dp * basis[0] + dm * basis[1];
  iv.xi_y = dm * basis[0] + dp * basis[1];
  iv.zeta_x = dp * basis[2] + dm * basis[3];
  iv.zeta_y = dm * basis[2] + dp * basis[3];
  iv.basis_label = "eigenbasis";
  return iv;
}

InteractionVectors build_fuchs_unequal(const DisturbancePair& d) {
  require_valid(d);
  const auto e = canonical_probe_basis();
  const auto [dp, dm] = d_coefficients(d.d_uv);
  InteractionVectors iv;
  iv.xi_x = dp * e[0] + dm * e[3];
  iv.xi_y = dm * e[0] + dp * e[3];
  iv.zeta_x = dm * e[2] + dp * e[1];
  iv.zeta_y = dp * e[2] + dm * e[1];
  return iv;
}

InteractionVectors build_fuchs_equal(double d) {
  require_valid({d, d});
  const auto e = canonical_probe_basis();
  const auto [dp, dm] = d_coefficients(d);
  const double c = 2.0 * dp * dm;        // = 1 - 2d
  const double s = dp * dp - dm * dm;    // = 2sqrt(d(1-d))
  InteractionVectors iv;
  iv.xi_x = e[0];
  iv.xi_y = c * e[0] + s * e[1];
  iv.zeta_x = e[2];
  iv.zeta_y = c * e[2] + s * e[3];
  return iv;
}

RotationMatrix one_param_rotation(double a) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument("one_param_rotation: a must lie in [0, 1]");
  }
  const double ra = std::sqrt(a);
  const double rb = std::sqrt(1.0 - a);
  RotationMatrix r = RotationMatrix::Zero();
  r(0, 0) = ra;  r(0, 1) = -rb;
  r(1, 0) = rb;  r(1, 1) = ra;
  r(2, 2) = ra;  r(2, 3) = -rb;
  r(3, 2) = rb;  r(3, 3) = ra;
  return r;
}

InteractionVectors build_one_param(const DisturbancePair& d, double a) {
  InteractionVectors iv = build_rotated(d, one_param_rotation(a));
  iv.basis_label = "canonical";
  return iv;
}

InteractionVectors build_rotated(const DisturbancePair& d, const RotationMatrix& r) {
  if (!is_orthogonal(r)) {
    throw std::invalid_argument("build_rotated: rotation matrix not orthogonal");
  }
  std::array<Ket, 4> basis{};
  for (int i = 0; i < 4; ++i) {
    Ket b(4);
    for (int j = 0; j < 4; ++j) b[j] = r(i, j);
    basis[static_cast<std::size_t>(i)] = b;
  }
  InteractionVectors iv = build_optimal_general(d, basis);
  iv.basis_label = "rotated";
  return iv;
}

JointStates joint_states(const InteractionVectors& iv, const DisturbancePair& d,
                         bool include_uv) {
  require_valid(d);
  validate(iv);
  const Ket x = ket2(1.0, 0.0);
  const Ket y = ket2(0.0, 1.0);
  const double w0 = std::sqrt(1.0 - d.d_xy);
  const double w1 = std::sqrt(d.d_xy);
  JointStates js;
  js.X = w0 * tensor_product(x, iv.xi_x) + w1 * tensor_product(y, iv.zeta_x);
  js.Y = w0 * tensor_product(y, iv.xi_y) + w1 * tensor_product(x, iv.zeta_y);
  if (include_uv) {
    const double s = 1.0 / std::sqrt(2.0);
    js.U = s * (js.X + js.Y);
    js.V = s * (js.X - js.Y);
  }
  return js;
}

InteractionVectors uv_interaction_vectors(const InteractionVectors& iv,
                                          const DisturbancePair& d) {
  require_valid(d);
  validate(iv);
  if (d.d_uv <= 0.0) {
    throw std::invalid_argument("uv_interaction_vectors: d_uv = 0 leaves the zeta components undefined");
  }
  const double wx0 = std::sqrt(1.0 - d.d_xy);
  const double wx1 = std::sqrt(d.d_xy);
  const Ket xi_sum = wx0 * (iv.xi_x + iv.xi_y);
  const Ket xi_diff = wx0 * (iv.xi_x - iv.xi_y);
  const Ket zeta_sum = wx1 * (iv.zeta_x + iv.zeta_y);
  const Ket zeta_diff = wx1 * (iv.zeta_y - iv.zeta_x);
  const double nu0 = 2.0 * std::sqrt(1.0 - d.d_uv);
  const double nu1 = 2.0 * std::sqrt(d.d_uv);
  InteractionVectors uv;
  uv.xi_x = (xi_sum + zeta_sum) / nu0;   // xi_u
  uv.xi_y = (xi_sum - zeta_sum) / nu0;   // xi_v
  uv.zeta_x = (xi_diff + zeta_diff) / nu1;  // zeta_u
  uv.zeta_y = (xi_diff - zeta_diff) / nu1;  // zeta_v
  uv.basis_label = iv.basis_label + ":uv";
  return uv;
}

namespace {

// Squared norm of ((⟨q| ⊗ I)|state⟩, the Eve-side component seen when
// Alice's qubit reads q.
double branch_weight(const Ket& q, const Ket& state) {
  double w = 0.0;
  for (int k = 0; k < 4; ++k) {
    const Complex amp = std::conj(q[0]) * state[k] + std::conj(q[1]) * state[4 + k];
    w += std::norm(amp);
  }
  return w;
}

}  // namespace

DisturbancePair measure_disturbance(const JointStates& js) {
  if (js.X.size() != 8 || js.Y.size() != 8) {
    throw std::invalid_argument("measure_disturbance: joint states must have dimension 8");
  }
  if (!js.U || !js.V) {
    throw std::invalid_argument("measure_disturbance: U and V components required");
  }
  const double s = 1.0 / std::sqrt(2.0);
  const Ket x = ket2(1.0, 0.0);
  const Ket y = ket2(0.0, 1.0);
  const Ket u = ket2(s, s);    // |u> in x-y coordinates
  const Ket v = ket2(s, -s);
  DisturbancePair d;
  d.d_xy = 0.5 * (branch_weight(y, js.X) + branch_weight(x, js.Y));
  d.d_uv = 0.5 * (branch_weight(v, *js.U) + branch_weight(u, *js.V));
  return d;
}

}  // namespace eveopt
