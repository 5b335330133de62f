#pragma once

#include <span>

#include "ratelab/experiment.hpp"
#include "ratelab/markov.hpp"
#include "ratelab/prior.hpp"

namespace ratelab {

// Exact sample-space expectations for small product and chain experiments,
// computed from sufficient statistics (outcome counts, transition counts)
// in extended precision. These are the independent ground truth the Monte
// Carlo bound checks are audited against.

// E over truth samples of (sum_{t in subset} prior_t R_t^beta)^alpha.
// Identical coordinates enumerate outcome multisets; per-coordinate tables
// enumerate full paths while prod_i b_i stays within state_budget.
double exact_power_integral(const DiscreteExperiment& exp, const GridPrior& prior,
                            std::span<const int> subset, double beta, double alpha,
                            std::size_t state_budget = (1u << 21));

// P over truth samples that log sum_t prior_t R_t^beta <= log_threshold.
double exact_evidence_cdf(const DiscreteExperiment& exp, const GridPrior& prior, double beta,
                          double log_threshold, std::size_t state_budget = (1u << 21));

// Chain versions over (x_0, transition counts); likelihoods are taken at
// full power.
double exact_power_integral(const FiniteMarkovExperiment& m, const GridPrior& prior,
                            std::span<const int> subset, double alpha);

double exact_evidence_cdf(const FiniteMarkovExperiment& m, const GridPrior& prior,
                          double log_threshold);

}  // namespace ratelab
