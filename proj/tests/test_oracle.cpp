#include "eveopt/oracle.hpp"

#include "eveopt/optimality.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace eveopt;

TEST_CASE("random_orthogonal is orthogonal and deterministic") {
  for (std::uint64_t s = 1; s <= 50; ++s) {
    const RotationMatrix r = random_orthogonal({s, 1});
    CHECK((r.transpose() * r - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
  const RotationMatrix a = random_orthogonal({42, 1});
  const RotationMatrix b = random_orthogonal({42, 1});
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  const RotationMatrix c = random_orthogonal({43, 1});
  CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("random_orthogonal first-entry statistic") {
  // Regression anchor for the sampling distribution: the first row is a
  // uniform direction, so E|R00| = 4/(3*pi) ~ 0.4244. Monte Carlo with this
  // seed landed at 0.42435; a later change to the generator should trip this.
  double acc = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    acc += std::abs(random_orthogonal({mix_seed(2024, static_cast<std::uint64_t>(i)), 1})(0, 0));
  }
  const double mean = acc / n;
  CHECK(std::abs(mean - 4.0 / (3.0 * M_PI)) < 0.02);
  CHECK(std::abs(mean - 0.42435) < 0.005);
}

TEST_CASE("random_povm is a valid POVM") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    validate(random_povm({s, 1}));
  }
  const Povm a = random_povm({7, 1});
  const Povm b = random_povm({7, 1});
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(testutil::max_abs_diff(a.elements[i], b.elements[i]) == 0.0);
  }
}

TEST_CASE("max_gain_search attains and never beats the trace norm") {
  const DisturbancePair d{0.25, 0.25};
  const JointStates js = joint_states(build_optimal_general(d, canonical_probe_basis()), d, false);
  const Operator rho_x = eve_density(js, Signal::X);
  const Operator rho_y = eve_density(js, Signal::Y);
  const double optimum = trace_norm(gamma_operator(rho_x, rho_y));
  CHECK(std::abs(optimum - 0.86602540378443865) < 1e-12);

  const double found = max_gain_search(rho_x, rho_y, {11, 2000});
  CHECK(found <= optimum + 1e-9);
  CHECK(found >= optimum - 1e-10);  // the eigenprojector entry attains it

  CHECK(max_gain_search(rho_x, rho_x, {11, 200}) < 1e-12);
}

TEST_CASE("max_gain_search is monotone in nested trial sets") {
  const DisturbancePair d{0.3, 0.2};
  const JointStates js = joint_states(random_interaction(d, {5, 1}), d, false);
  const Operator rho_x = eve_density(js, Signal::X);
  const Operator rho_y = eve_density(js, Signal::Y);
  double prev = 0.0;
  for (int trials : {10, 100, 1000}) {
    const double v = max_gain_search(rho_x, rho_y, {600, trials});
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("parallel and serial searches agree exactly") {
  const DisturbancePair d{0.2, 0.35};
  const JointStates js = joint_states(random_interaction(d, {8, 1}), d, false);
  const Operator rho_x = eve_density(js, Signal::X);
  const Operator rho_y = eve_density(js, Signal::Y);
  const SampleConfig cfg{123, 5000};
  CHECK(max_gain_search(rho_x, rho_y, cfg) == max_gain_search_serial(rho_x, rho_y, cfg));
}

TEST_CASE("random_interaction is structurally valid and generically suboptimal") {
  const DisturbancePair d{0.25, 0.25};
  int strict = 0;
  const int n = 1000;
  for (int k = 0; k < n; ++k) {
    const SampleConfig cfg{mix_seed(909, static_cast<std::uint64_t>(k)), 1};
    const InteractionVectors iv = random_interaction(d, cfg);
    validate(iv);
    const JointStates js = joint_states(iv, d);
    const DisturbancePair measured = measure_disturbance(js);
    const double bound = gain_bound(std::clamp(measured.d_uv, 0.0, 0.5));
    const double gain = trace_norm(gamma_operator(eve_density(js, Signal::X), eve_density(js, Signal::Y)));
    CHECK(gain <= bound + 1e-9);
    if (gain < bound - 1e-9) ++strict;
  }
  CHECK(strict > n * 99 / 100);
}

TEST_CASE("random_interaction with the optimal parameters hits the bound") {
  const DisturbancePair d{0.25, 0.25};
  const auto [dp, dm] = d_coefficients(d.d_uv);
  const double alpha = dp * dp;
  SampledInteraction s = random_interaction_sample(d, {17, 1});
  // overwrite the sampled exponents with the optimal ones over the same basis
  InteractionVectors iv;
  iv.xi_x = std::sqrt(alpha) * s.basis[0] + std::sqrt(1.0 - alpha) * s.basis[1];
  iv.xi_y = std::sqrt(1.0 - alpha) * s.basis[0] + std::sqrt(alpha) * s.basis[1];
  iv.zeta_x = std::sqrt(alpha) * s.basis[2] + std::sqrt(1.0 - alpha) * s.basis[3];
  iv.zeta_y = std::sqrt(1.0 - alpha) * s.basis[2] + std::sqrt(alpha) * s.basis[3];
  const JointStates js = joint_states(iv, d, false);
  const double gain = trace_norm(gamma_operator(eve_density(js, Signal::X), eve_density(js, Signal::Y)));
  CHECK(std::abs(gain - gain_bound(d.d_uv)) < 1e-10);
}

TEST_CASE("sampled interactions follow the per-outcome closed forms") {
  // measured in its own construction basis, outcome l = 0 carries
  // |alpha-beta|/(alpha+beta), l = 1 the complementary ratio, and the zeta
  // block mirrors both with (mu, nu)
  for (std::uint64_t k = 0; k < 50; ++k) {
    const DisturbancePair d{0.2, 0.3};
    const SampledInteraction s = random_interaction_sample(d, {mix_seed(414, k), 1});
    const OutcomeStats stats = outcome_statistics(s.iv, d, projector_povm(s.basis));
    const double g0 = std::abs(s.alpha - s.beta) / (s.alpha + s.beta);
    const double g1 = std::abs(s.alpha - s.beta) / (2.0 - s.alpha - s.beta);
    const double g2 = std::abs(s.mu - s.nu) / (s.mu + s.nu);
    const double g3 = std::abs(s.mu - s.nu) / (2.0 - s.mu - s.nu);
    CHECK(std::abs(stats.gain[0] - g0) < 1e-9);
    CHECK(std::abs(stats.gain[1] - g1) < 1e-9);
    CHECK(std::abs(stats.gain[2] - g2) < 1e-9);
    CHECK(std::abs(stats.gain[3] - g3) < 1e-9);
  }
}

TEST_CASE("mix_seed separates streams") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(5, 3) == mix_seed(5, 3));
}
