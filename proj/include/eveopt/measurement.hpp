#pragma once

#include "eveopt/interaction.hpp"

#include <vector>

namespace eveopt {

struct PriorPair {
  double p_x = 0.5;
  double p_y = 0.5;
};

void require_valid(const PriorPair& p);
bool equal_priors(const PriorPair& p, double tol = kConstructTol);

/// Generalized measurement: non-negative operators summing to identity.
/// Every POVM constructed here is a set of rank-1 projectors.
struct Povm {
  std::vector<Operator> elements;
};

Povm projector_povm(const std::vector<Ket>& basis);
void validate(const Povm& p, double tol = kVerifyTol);

enum class Signal { X, Y };

/// Eve's reduced density operator for the chosen signal.
Operator eve_density(const JointStates& js, Signal s);

/// Prior-weighted discrimination operator p_x·ρ_x − p_y·ρ_y; traceless for
/// equal priors.
Operator gamma_operator(const Operator& rho_x, const Operator& rho_y,
                        const PriorPair& priors = {});

struct OptimalPovm {
  Povm povm;
  std::vector<Ket> vectors;     // eigenbasis, descending eigenvalue order
  Eigen::VectorXd eigenvalues;  // same order
  double max_gain;              // tr|gamma|, attained by this POVM
};

/// Eigenprojector POVM of the discrimination operator. For a degenerate
/// spectrum the returned basis is the deterministic representative chosen by
/// hermitian_eigensystem.
OptimalPovm optimal_povm(const Operator& gamma);

/// Per-outcome likelihoods, marginals, posteriors and gains plus the
/// aggregate gain and mutual information (nats; NaN for unequal priors).
struct OutcomeStats {
  std::vector<double> p_given_x, p_given_y;  // P(outcome | signal)
  std::vector<double> q;                     // outcome marginal
  std::vector<double> post_x, post_y;        // posteriors, Bayes
  std::vector<double> gain;                  // |post_x - post_y|; 0 where q = 0
  double gain_total = 0.0;
  double mutual_info = 0.0;
  PriorPair priors;
};

OutcomeStats outcome_statistics(const InteractionVectors& iv, const DisturbancePair& d,
                                const Povm& povm, const PriorPair& priors = {});

/// ln 2 + Σ_λ q(λ)(Q_xλ ln Q_xλ + Q_yλ ln Q_yλ) with 0·ln 0 = 0, in nats.
/// Requires equal priors.
double mutual_information(const OutcomeStats& stats);

}  // namespace eveopt
