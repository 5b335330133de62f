#pragma once

#include <span>
#include <vector>

#include "ratelab/rng.hpp"

namespace ratelab {

// Finite prior over a parameter grid, weights normalized to total mass one.
struct GridPrior {
  std::vector<double> weights;

  static GridPrior uniform(int count);

  void validate() const;  // nonnegative, sums to 1 within 1e-12
  [[nodiscard]] double log_weight(int index) const;
  [[nodiscard]] int sample(Rng& rng) const;
};

// Uniform prior on the coefficient cube [-m, m]^k.
struct StepUniformPrior {
  double m = 1.0;
  int k = 1;

  [[nodiscard]] std::vector<double> sample(Rng& rng) const;
  // Constant inside the cube; OutOfSupport outside.
  [[nodiscard]] double log_weight(std::span<const double> beta) const;
};

// Data-dependent power prior dLambda proportional to dPi / p_theta^{1-beta}.
// Its density involves the data, so direct draws are unavailable; the
// posterior module realizes it by raising the likelihood to the power beta
// under the base prior instead.
struct PowerDataPrior {
  double beta = 0.5;

  // Always throws UnsupportedKind: sampling requires the data-dependent
  // factor that only the posterior computation knows.
  [[noreturn]] void sample() const;
};

}  // namespace ratelab
