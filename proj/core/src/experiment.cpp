#include "ratelab/experiment.hpp"

#include <cmath>

#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {

DiscreteExperiment::DiscreteExperiment(std::vector<std::vector<double>> pmf, int n, int truth) {
  tables_.push_back(std::move(pmf));
  identical_ = true;
  n_ = n;
  truth_ = truth;
  params_ = static_cast<int>(tables_[0].size());
  validate();
}

DiscreteExperiment DiscreteExperiment::inid(std::vector<std::vector<std::vector<double>>> tables,
                                            int truth) {
  DiscreteExperiment e;
  e.tables_ = std::move(tables);
  e.identical_ = false;
  e.n_ = static_cast<int>(e.tables_.size());
  e.truth_ = truth;
  e.params_ = e.tables_.empty() ? 0 : static_cast<int>(e.tables_[0].size());
  e.validate();
  return e;
}

void DiscreteExperiment::validate() const {
  if (n_ <= 0) throw DimensionMismatch("DiscreteExperiment: n must be positive");
  if (params_ <= 0) throw DimensionMismatch("DiscreteExperiment: empty parameter grid");
  if (truth_ < 0 || truth_ >= params_) throw OutOfRange("DiscreteExperiment: truth index");
  for (const auto& table : tables_) {
    if (static_cast<int>(table.size()) != params_) {
      throw DimensionMismatch("DiscreteExperiment: ragged parameter dimension");
    }
    std::size_t outcomes = table[0].size();
    for (const auto& row : table) {
      if (row.size() != outcomes || row.empty()) {
        throw DimensionMismatch("DiscreteExperiment: ragged outcome dimension");
      }
      KahanSum s;
      for (double p : row) {
        if (p < 0.0) throw OutOfRange("DiscreteExperiment: negative probability");
        s.add(p);
      }
      if (std::fabs(s.value() - 1.0) > 1e-12) {
        throw OutOfRange("DiscreteExperiment: pmf row does not sum to 1");
      }
    }
  }
}

int DiscreteExperiment::outcome_count(int coord) const {
  const auto& table = tables_[identical_ ? 0 : coord];
  return static_cast<int>(table[0].size());
}

std::span<const double> DiscreteExperiment::pmf(int coord, ParameterId theta) const {
  if (coord < 0 || coord >= n_) throw OutOfRange("pmf: coordinate index");
  if (theta.index < 0 || theta.index >= params_) throw OutOfRange("pmf: parameter index");
  return tables_[identical_ ? 0 : coord][theta.index];
}

double DiscreteExperiment::log_density(ParameterId theta, const SampleBatch& batch) const {
  if (batch.size() != n_) throw DimensionMismatch("log_density: batch size != n");
  KahanSum s;
  for (int i = 0; i < n_; ++i) {
    auto row = pmf(i, theta);
    int xi = batch.x[i];
    if (xi < 0 || xi >= static_cast<int>(row.size())) {
      throw OutOfRange("log_density: outcome code out of range");
    }
    double p = row[xi];
    if (p == 0.0) return kNegInf;
    s.add(std::log(p));
  }
  return s.value();
}

double DiscreteExperiment::log_likelihood_ratio(ParameterId theta, const SampleBatch& batch) const {
  double denom = log_density(truth(), batch);
  if (denom == kNegInf) {
    throw NonDominated("log_likelihood_ratio: truth density vanishes on batch");
  }
  double numer = log_density(theta, batch);
  return numer == kNegInf ? kNegInf : numer - denom;
}

SampleBatch DiscreteExperiment::sample(ParameterId theta, Rng rng) const {
  SampleBatch b;
  b.x.resize(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    b.x[static_cast<std::size_t>(i)] = rng.discrete(pmf(i, theta));
  }
  return b;
}

SampleBatch DiscreteExperiment::sample_truth(Rng rng) const { return sample(truth(), rng); }

}  // namespace ratelab
