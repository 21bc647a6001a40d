#include "eveopt/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eveopt {

void require_valid(const PriorPair& p) {
  if (!(p.p_x >= 0.0 && p.p_y >= 0.0) || std::abs(p.p_x + p.p_y - 1.0) > kConstructTol) {
    throw std::invalid_argument("PriorPair: probabilities must be non-negative and sum to 1");
  }
}

bool equal_priors(const PriorPair& p, double tol) {
  return std::abs(p.p_x - p.p_y) <= tol;
}

Povm projector_povm(const std::vector<Ket>& basis) {
  Povm p;
  p.elements.reserve(basis.size());
  for (const Ket& v : basis) p.elements.push_back(v * v.adjoint());
  return p;
}

void validate(const Povm& p, double tol) {
  if (p.elements.empty()) throw std::invalid_argument("Povm: no elements");
  const Eigen::Index dim = p.elements.front().rows();
  Operator sum = Operator::Zero(dim, dim);
  for (const Operator& e : p.elements) {
    if (e.rows() != dim || e.cols() != dim) {
      throw std::invalid_argument("Povm: element dimensions differ");
    }
    if (!is_hermitian(e, tol)) throw std::invalid_argument("Povm: element not Hermitian");
    const auto eig = hermitian_eigensystem(e);
    if (eig.values.minCoeff() < -tol) {
      throw std::invalid_argument("Povm: element not non-negative definite");
    }
    sum += e;
  }
  if ((sum - Operator::Identity(dim, dim)).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("Povm: elements do not sum to identity");
  }
}

Operator eve_density(const JointStates& js, Signal s) {
  const Ket& state = (s == Signal::X) ? js.X : js.Y;
  return partial_trace_first(state * state.adjoint(), 2);
}

Operator gamma_operator(const Operator& rho_x, const Operator& rho_y,
                        const PriorPair& priors) {
  require_valid(priors);
  if (rho_x.rows() != rho_y.rows() || rho_x.cols() != rho_y.cols()) {
    throw std::invalid_argument("gamma_operator: density dimensions differ");
  }
  return priors.p_x * rho_x - priors.p_y * rho_y;
}

OptimalPovm optimal_povm(const Operator& gamma) {
  auto eig = hermitian_eigensystem(gamma);
  OptimalPovm out;
  out.vectors = eig.vectors;
  out.eigenvalues = eig.values;
  out.povm = projector_povm(out.vectors);
  out.max_gain = eig.values.cwiseAbs().sum();
  return out;
}

namespace {

double outcome_probability(const Operator& rho, const Operator& element) {
  // tr(rho E); tiny negative values are rounding noise
  return std::max((rho * element).trace().real(), 0.0);
}

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

double mutual_information_impl(const OutcomeStats& s) {
  double acc = std::log(2.0);
  for (std::size_t l = 0; l < s.q.size(); ++l) {
    if (s.q[l] < 1e-15) continue;
    acc += s.q[l] * (plogp(s.post_x[l]) + plogp(s.post_y[l]));
  }
  return acc;
}

}  // namespace

OutcomeStats outcome_statistics(const InteractionVectors& iv, const DisturbancePair& d,
                                const Povm& povm, const PriorPair& priors) {
  require_valid(priors);
  validate(povm);
  const JointStates js = joint_states(iv, d, false);
  const Operator rho_x = eve_density(js, Signal::X);
  const Operator rho_y = eve_density(js, Signal::Y);

  const std::size_t n = povm.elements.size();
  OutcomeStats s;
  s.priors = priors;
  s.p_given_x.resize(n);
  s.p_given_y.resize(n);
  s.q.resize(n);
  s.post_x.resize(n);
  s.post_y.resize(n);
  s.gain.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    s.p_given_x[l] = outcome_probability(rho_x, povm.elements[l]);
    s.p_given_y[l] = outcome_probability(rho_y, povm.elements[l]);
    s.q[l] = priors.p_x * s.p_given_x[l] + priors.p_y * s.p_given_y[l];
    if (s.q[l] > 0.0) {
      s.post_x[l] = priors.p_x * s.p_given_x[l] / s.q[l];
      s.post_y[l] = priors.p_y * s.p_given_y[l] / s.q[l];
      s.gain[l] = std::abs(s.post_x[l] - s.post_y[l]);
    } else {
      s.post_x[l] = 0.0;
      s.post_y[l] = 0.0;
      s.gain[l] = 0.0;
    }
    s.gain_total += s.q[l] * s.gain[l];
  }
  s.mutual_info = equal_priors(priors) ? mutual_information_impl(s)
                                       : std::numeric_limits<double>::quiet_NaN();
  return s;
}

double mutual_information(const OutcomeStats& stats) {
  if (!equal_priors(stats.priors)) {
    throw std::invalid_argument("mutual_information: defined for equal priors only");
  }
  return mutual_information_impl(stats);
}

}  // namespace eveopt
