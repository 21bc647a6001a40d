#include "eveopt/oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace eveopt {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

Eigen::Matrix4d random_orthogonal_from(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (true) {
    Eigen::Matrix4d g;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) g(r, c) = gauss(rng);
    }
    Eigen::Matrix4d q;
    bool ok = true;
    for (int r = 0; r < 4 && ok; ++r) {
      Eigen::Vector4d w = g.row(r);
      for (int p = 0; p < r; ++p) w -= q.row(p).dot(w) * q.row(p).transpose();
      const double n = w.norm();
      if (n < 1e-8) {
        ok = false;  // measure-zero near-dependence; redraw
        break;
      }
      q.row(r) = w.transpose() / n;
    }
    if (ok) return q;
  }
}

// Sum_l |<e_l| gamma |e_l>| for the projector POVM onto the rows of q.
double projector_gain(const Eigen::Matrix4cd& gamma, const Eigen::Matrix4d& q) {
  double total = 0.0;
  for (int r = 0; r < 4; ++r) {
    const Eigen::Vector4cd e = q.row(r).transpose().cast<Complex>();
    total += std::abs(e.dot(gamma * e).real());
  }
  return total;
}

}  // namespace

RotationMatrix random_orthogonal(const SampleConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return random_orthogonal_from(rng);
}

std::vector<Ket> random_orthonormal_basis(const SampleConfig& cfg) {
  const RotationMatrix q = random_orthogonal(cfg);
  std::vector<Ket> basis;
  basis.reserve(4);
  for (int r = 0; r < 4; ++r) {
    Ket v(4);
    for (int c = 0; c < 4; ++c) v[c] = q(r, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

Povm random_povm(const SampleConfig& cfg) {
  return projector_povm(random_orthonormal_basis(cfg));
}

namespace {

double max_gain_search_impl(const Operator& rho_x, const Operator& rho_y,
                            const SampleConfig& cfg, bool parallel) {
  if (rho_x.rows() != 4 || rho_x.cols() != 4 || rho_y.rows() != 4 || rho_y.cols() != 4) {
    throw std::invalid_argument("max_gain_search: expected 4x4 density operators");
  }
  if (cfg.trials < 0) throw std::invalid_argument("max_gain_search: negative trial count");
  const Operator gamma_dyn = gamma_operator(rho_x, rho_y);
  if (!is_hermitian(gamma_dyn, 1e-9)) {
    throw std::invalid_argument("max_gain_search: densities must be Hermitian");
  }
  const Eigen::Matrix4cd gamma = gamma_dyn;

  // The eigenprojector entry, evaluated like any other competitor.
  const auto eig = hermitian_eigensystem(gamma_dyn, 1e-9);
  double best = 0.0;
  for (int r = 0; r < 4; ++r) {
    const Eigen::Vector4cd e = eig.vectors[static_cast<std::size_t>(r)];
    best += std::abs(e.dot(gamma * e).real());
  }

  const std::int64_t trials = cfg.trials;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) reduction(max : best) if (parallel)
#endif
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    const Eigen::Matrix4d q = random_orthogonal_from(rng);
    const double g = projector_gain(gamma, q);
    if (g > best) best = g;
  }
  (void)parallel;
  return best;
}

}  // namespace

double max_gain_search(const Operator& rho_x, const Operator& rho_y,
                       const SampleConfig& cfg) {
  return max_gain_search_impl(rho_x, rho_y, cfg, true);
}

double max_gain_search_serial(const Operator& rho_x, const Operator& rho_y,
                              const SampleConfig& cfg) {
  return max_gain_search_impl(rho_x, rho_y, cfg, false);
}

SampledInteraction random_interaction_sample(const DisturbancePair& d,
                                             const SampleConfig& cfg) {
  require_valid(d);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampledInteraction s;
  s.alpha = unit(rng);
  s.beta = unit(rng);
  s.mu = unit(rng);
  s.nu = unit(rng);
  const Eigen::Matrix4d q = random_orthogonal_from(rng);
  s.basis.reserve(4);
  for (int r = 0; r < 4; ++r) {
    Ket v(4);
    for (int c = 0; c < 4; ++c) v[c] = q(r, c);
    s.basis.push_back(std::move(v));
  }
  s.iv.xi_x = std::sqrt(s.alpha) * s.basis[0] + std::sqrt(1.0 - s.alpha) * s.basis[1];
  s.iv.xi_y = std::sqrt(s.beta) * s.basis[0] + std::sqrt(1.0 - s.beta) * s.basis[1];
  s.iv.zeta_x = std::sqrt(s.mu) * s.basis[2] + std::sqrt(1.0 - s.mu) * s.basis[3];
  s.iv.zeta_y = std::sqrt(s.nu) * s.basis[2] + std::sqrt(1.0 - s.nu) * s.basis[3];
  s.iv.basis_label = "sampled";
  return s;
}

InteractionVectors random_interaction(const DisturbancePair& d, const SampleConfig& cfg) {
  return random_interaction_sample(d, cfg).iv;
}

}  // namespace eveopt
