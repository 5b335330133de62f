#pragma once

#include <span>

#include "ratelab/ar_model.hpp"
#include "ratelab/experiment.hpp"
#include "ratelab/gauss_seq.hpp"
#include "ratelab/markov.hpp"
#include "ratelab/prior.hpp"

namespace ratelab {

// The four concentration neighborhoods of the truth. Thresholds:
//   wn:        joint H* <= sqrt((2/3)(e^{1.5 n eps^2} - 1))
//   wn_bar:    (1/n) sum_i H*_i^2 <= eps^2
//   bn:        KL <= n eps^2 and centered |log-ratio|^k moment <= n^{k/2} eps^k
//   wn_markov: transition H*^2 + initial H*^2 / n <= eps^2
enum class NeighborhoodKind { wn, wn_bar, bn, wn_markov };

struct NeighborhoodSpec {
  NeighborhoodKind kind = NeighborhoodKind::wn;
  double epsilon = 0;
  int n = 1;
  int k = 2;  // moment order, bn only

  void validate() const;
};

// Membership of one grid parameter for a product experiment. Joint-moment
// kinds use the per-coordinate factorizations, which are exact here.
bool member(const NeighborhoodSpec& spec, const DiscreteExperiment& exp, ParameterId theta);

// Membership for the sequence model; theta may be shorter than the model
// dimension (zero padded). wn_bar requires the independent case rho = 0.
bool member(const NeighborhoodSpec& spec, const GaussSeqModel& m, std::span<const double> theta);

// Membership for a finite chain (wn_markov only).
bool member(const NeighborhoodSpec& spec, const FiniteMarkovExperiment& m, ParameterId theta);

// Membership for a step-drift autoregression (wn_markov only; the initial
// law is shared, so its H* term is identically zero).
bool member(const NeighborhoodSpec& spec, const ArModel& m, std::span<const double> beta);

struct MassEstimate {
  double estimate = 0;
  double stderr_ = 0;
};

// Exact member-weight sums over finite priors (stderr 0).
MassEstimate neighborhood_mass(const NeighborhoodSpec& spec, const DiscreteExperiment& exp,
                               const GridPrior& prior);
MassEstimate neighborhood_mass(const NeighborhoodSpec& spec, const FiniteMarkovExperiment& m,
                               const GridPrior& prior);

// Monte Carlo member proportion with binomial standard error.
MassEstimate neighborhood_mass_mc(const NeighborhoodSpec& spec, const ArModel& m,
                                  const StepUniformPrior& prior, int budget, Rng rng);

}  // namespace ratelab
