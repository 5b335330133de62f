#include "ratelab/prior.hpp"

#include <cmath>

#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {

GridPrior GridPrior::uniform(int count) {
  if (count < 1) throw OutOfRange("GridPrior: count must be >= 1");
  GridPrior p;
  p.weights.assign(static_cast<std::size_t>(count), 1.0 / count);
  return p;
}

void GridPrior::validate() const {
  if (weights.empty()) throw DimensionMismatch("GridPrior: empty weight table");
  KahanSum total;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw OutOfRange("GridPrior: weights must be >= 0");
    total.add(w);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw OutOfRange("GridPrior: weights must sum to 1");
  }
}

double GridPrior::log_weight(int index) const {
  if (index < 0 || index >= static_cast<int>(weights.size())) {
    throw OutOfRange("GridPrior: index");
  }
  double w = weights[static_cast<std::size_t>(index)];
  return w > 0.0 ? std::log(w) : kNegInf;
}

int GridPrior::sample(Rng& rng) const { return rng.discrete(weights); }

std::vector<double> StepUniformPrior::sample(Rng& rng) const {
  if (k < 1) throw OutOfRange("StepUniformPrior: k must be >= 1");
  if (!(m > 0.0)) throw OutOfRange("StepUniformPrior: m must be positive");
  std::vector<double> beta(static_cast<std::size_t>(k));
  for (double& b : beta) b = rng.uniform(-m, m);
  return beta;
}

double StepUniformPrior::log_weight(std::span<const double> beta) const {
  if (static_cast<int>(beta.size()) != k) throw DimensionMismatch("StepUniformPrior: size");
  for (double b : beta) {
    if (std::abs(b) > m) throw OutOfSupport("StepUniformPrior: coefficient outside the cube");
  }
  return -k * std::log(2.0 * m);
}

void PowerDataPrior::sample() const {
  throw UnsupportedKind("PowerDataPrior: draws go through the posterior module");
}

}  // namespace ratelab
