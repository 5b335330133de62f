#pragma once

#include <span>
#include <vector>

#include "ratelab/rng.hpp"

namespace ratelab {

// Index into a finite parameter grid.
struct ParameterId {
  int index = 0;
};

// One dataset over a finite outcome space: n coordinate codes, or n+1 states
// for a chain (slot 0 holds the initial state).
struct SampleBatch {
  std::vector<int> x;
  [[nodiscard]] int size() const { return static_cast<int>(x.size()); }
};

// Product experiment with finitely many parameters and finite per-coordinate
// outcome spaces. Coordinates are either identical (one pmf table) or given
// per coordinate (independent non-identically distributed).
class DiscreteExperiment {
 public:
  // Identical coordinates: pmf[param][outcome], n independent copies.
  DiscreteExperiment(std::vector<std::vector<double>> pmf, int n, int truth);

  // Per-coordinate tables: tables[coord][param][outcome].
  static DiscreteExperiment inid(std::vector<std::vector<std::vector<double>>> tables, int truth);

  [[nodiscard]] int parameter_count() const { return params_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] ParameterId truth() const { return {truth_}; }
  [[nodiscard]] bool identical_coordinates() const { return identical_; }
  [[nodiscard]] int outcome_count(int coord) const;

  // pmf row of one coordinate for one parameter.
  [[nodiscard]] std::span<const double> pmf(int coord, ParameterId theta) const;

  [[nodiscard]] double log_density(ParameterId theta, const SampleBatch& batch) const;

  // log p_theta(x) - log p_truth(x); NonDominated if the truth density
  // vanishes on the batch. -inf when only p_theta vanishes.
  [[nodiscard]] double log_likelihood_ratio(ParameterId theta, const SampleBatch& batch) const;

  [[nodiscard]] SampleBatch sample(ParameterId theta, Rng rng) const;
  [[nodiscard]] SampleBatch sample_truth(Rng rng) const;

 private:
  DiscreteExperiment() = default;
  void validate() const;

  std::vector<std::vector<std::vector<double>>> tables_;  // [coord][param][outcome]
  bool identical_ = true;  // tables_ has one entry reused for every coordinate
  int params_ = 0;
  int n_ = 0;
  int truth_ = 0;
};

}  // namespace ratelab
