#pragma once

#include <functional>
#include <vector>

#include "ratelab/experiment.hpp"

namespace ratelab {

// Poisson masses on {0..trunc}; not renormalized, the dropped tail is
// reported so callers can audit it against the experiment tolerance.
struct PoissonPmf {
  std::vector<double> mass;
  double tail = 0;
};
PoissonPmf poisson_pmf(double rate, int trunc);

// Single Poisson mass e^{-rate} rate^x / x!.
double poisson_coord_pmf(double rate, int x);

using LinkFn = std::function<double(double)>;

// Increasing logistic link from (lo, hi): lo + (hi-lo) / (1 + e^{-(z-center)}).
LinkFn logistic_link(double lo, double hi, double center);

// Count regression: coordinate i observes Poisson(link(z_i)) with every
// registered link taking values in [lo, hi].
struct PoissonRegModel {
  std::vector<double> covariates;
  double lo = 0;
  double hi = 0;
  int trunc = 60;

  // Product experiment whose coordinate i uses the rate links[p](z_i).
  // Rates outside [lo, hi] are rejected.
  [[nodiscard]] DiscreteExperiment experiment(const std::vector<LinkFn>& links,
                                              int truth_index) const;

  // (1/n) sum_i H*(Poisson(l1(z_i)), Poisson(l2(z_i)))^2 by direct summation.
  [[nodiscard]] double mean_hstar2(const LinkFn& l1, const LinkFn& l2) const;

  // Empirical L2 distance between links over the covariates.
  [[nodiscard]] double link_l2(const LinkFn& l1, const LinkFn& l2) const;
};

}  // namespace ratelab
