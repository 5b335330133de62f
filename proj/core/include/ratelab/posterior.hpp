#pragma once

#include <span>
#include <vector>

#include "ratelab/prior.hpp"

namespace ratelab {

// Posterior over a finite support, kept in log space. log_weights are
// normalized; log_evidence is log of the integrated likelihood ratio
// (the posterior denominator) under the prior.
struct ExactPosterior {
  std::vector<double> log_weights;
  double log_evidence = 0;
};

// Pseudoposterior with the likelihood ratio raised to beta in (0, 1]:
// weights proportional to prior_i * exp(beta * llr_i). beta = 1 is the
// plain posterior through the identical code path.
ExactPosterior pseudoposterior_exact(const GridPrior& prior, std::span<const double> llr,
                                     double beta);
ExactPosterior posterior_exact(const GridPrior& prior, std::span<const double> llr);

// Self-normalized importance sample with the prior as proposal: the draw
// weights are R^beta. ess = (sum w)^2 / sum w^2; degenerate flags ess < 10
// so callers cannot mistake a collapsed sample for a healthy one.
struct ImportanceResult {
  std::vector<double> log_weights;  // normalized
  double log_evidence = 0;
  double ess = 0;
  bool degenerate = false;

  // Throws DegenerateESS when the flag is set.
  void require_healthy() const;
};
ImportanceResult importance_posterior(std::span<const double> llr, double beta);

// Posterior mass of {distance >= radius} (weak inequality).
double posterior_tail_mass(std::span<const double> log_weights,
                           std::span<const double> distance, double radius);

// Smallest support value v with posterior mass of {value <= v} at least q.
double weighted_quantile(std::span<const double> log_weights,
                         std::span<const double> values, double q);

}  // namespace ratelab
