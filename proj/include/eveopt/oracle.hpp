#pragma once

#include "eveopt/measurement.hpp"

#include <cstdint>

namespace eveopt {

/// Seeded sampling plan. Trial t draws from its own sub-stream
/// mix_seed(seed, t), so results are independent of evaluation order and
/// identical between the serial and OpenMP paths.
struct SampleConfig {
  std::uint64_t seed = 1;
  int trials = 10000;
};

/// splitmix64 finalizer over (seed, stream); the sub-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Haar-like 4x4 orthogonal matrix: Gram-Schmidt rows of an i.i.d. standard
/// normal matrix (the factorization's positive diagonal keeps the
/// distribution rotation invariant). Deterministic in cfg.seed.
RotationMatrix random_orthogonal(const SampleConfig& cfg);

std::vector<Ket> random_orthonormal_basis(const SampleConfig& cfg);

/// Rank-1 projectors onto a random orthonormal basis. Per-vector phases are
/// omitted: a phase cancels inside |v⟩⟨v|.
Povm random_povm(const SampleConfig& cfg);

/// Best information gain found over cfg.trials random projector POVMs plus
/// one evaluation at the eigenprojector POVM of ½(ρ_x − ρ_y). OpenMP over
/// trials; bitwise equal to max_gain_search_serial.
double max_gain_search(const Operator& rho_x, const Operator& rho_y,
                       const SampleConfig& cfg);

/// Reference implementation of the same search, kept serial for testing and
/// benchmarking.
double max_gain_search_serial(const Operator& rho_x, const Operator& rho_y,
                              const SampleConfig& cfg);

/// Generic interaction of the two-block form: ξ's mix (E0, E1) with weights
/// (√α, √(1−α)) / (√β, √(1−β)), ζ's mix (E2, E3) with (√μ, ...) / (√ν, ...),
/// over a random orthonormal basis. Generically non-optimal; optimal exactly
/// when α = D+², β = ν = 1−α, μ = α.
struct SampledInteraction {
  InteractionVectors iv;
  double alpha, beta, mu, nu;
  std::vector<Ket> basis;
};

SampledInteraction random_interaction_sample(const DisturbancePair& d,
                                             const SampleConfig& cfg);

InteractionVectors random_interaction(const DisturbancePair& d, const SampleConfig& cfg);

}  // namespace eveopt
