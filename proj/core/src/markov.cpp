#include "ratelab/markov.hpp"

#include <cmath>

#include "ratelab/divergence.hpp"
#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {
namespace {

void check_pmf(std::span<const double> row, int states, const char* what) {
  if (static_cast<int>(row.size()) != states) throw DimensionMismatch(what);
  KahanSum s;
  for (double p : row) {
    if (p < 0.0) throw OutOfRange("FiniteMarkovExperiment: negative probability");
    s.add(p);
  }
  if (std::fabs(s.value() - 1.0) > 1e-12) {
    throw OutOfRange("FiniteMarkovExperiment: pmf does not sum to 1");
  }
}

}  // namespace

FiniteMarkovExperiment::FiniteMarkovExperiment(std::vector<ChainParam> params, int n, int truth,
                                               std::vector<double> reference)
    : params_(std::move(params)), ref_(std::move(reference)), n_(n), truth_(truth) {
  if (params_.empty()) throw DimensionMismatch("FiniteMarkovExperiment: empty parameter grid");
  if (n_ <= 0) throw OutOfRange("FiniteMarkovExperiment: n must be positive");
  states_ = static_cast<int>(ref_.size());
  check_pmf(ref_, states_, "FiniteMarkovExperiment: reference size");
  if (truth_ < 0 || truth_ >= parameter_count()) {
    throw OutOfRange("FiniteMarkovExperiment: truth index");
  }
  for (const auto& p : params_) {
    check_pmf(p.initial, states_, "FiniteMarkovExperiment: initial pmf size");
    if (static_cast<int>(p.rows.size()) != states_) {
      throw DimensionMismatch("FiniteMarkovExperiment: transition row count");
    }
    for (const auto& row : p.rows) check_pmf(row, states_, "FiniteMarkovExperiment: row size");
  }
}

double FiniteMarkovExperiment::log_density(ParameterId theta, const SampleBatch& path) const {
  if (path.size() != n_ + 1) throw DimensionMismatch("log_density: path length != n+1");
  const auto& p = param(theta.index);
  for (int v : path.x) {
    if (v < 0 || v >= states_) throw OutOfRange("log_density: state code out of range");
  }
  double q0 = p.initial[static_cast<std::size_t>(path.x[0])];
  if (q0 == 0.0) return kNegInf;
  KahanSum s;
  s.add(std::log(q0));
  for (int i = 1; i <= n_; ++i) {
    double pr = p.rows[static_cast<std::size_t>(path.x[i - 1])][static_cast<std::size_t>(path.x[i])];
    if (pr == 0.0) return kNegInf;
    s.add(std::log(pr));
  }
  return s.value();
}

double FiniteMarkovExperiment::log_likelihood_ratio(ParameterId theta,
                                                    const SampleBatch& path) const {
  double denom = log_density(truth(), path);
  if (denom == kNegInf) throw NonDominated("log_likelihood_ratio: truth density vanishes");
  double numer = log_density(theta, path);
  return numer == kNegInf ? kNegInf : numer - denom;
}

SampleBatch FiniteMarkovExperiment::sample(ParameterId theta, Rng rng) const {
  const auto& p = param(theta.index);
  SampleBatch b;
  b.x.resize(static_cast<std::size_t>(n_) + 1);
  b.x[0] = rng.discrete(p.initial);
  for (int i = 1; i <= n_; ++i) {
    b.x[static_cast<std::size_t>(i)] = rng.discrete(p.rows[static_cast<std::size_t>(b.x[i - 1])]);
  }
  return b;
}

SampleBatch FiniteMarkovExperiment::sample_truth(Rng rng) const { return sample(truth(), rng); }

MarkovBoundsCertificate FiniteMarkovExperiment::bounds() const {
  MarkovBoundsCertificate c;
  c.a0 = std::numeric_limits<double>::infinity();
  c.a1 = 0.0;
  for (const auto& p : params_) {
    for (int x = 0; x < states_; ++x) {
      for (int y = 0; y < states_; ++y) {
        double r = ref_[static_cast<std::size_t>(y)];
        double pr = p.rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        if (r == 0.0) {
          if (pr > 0.0) throw OutOfRange("bounds: transition mass outside reference support");
          continue;
        }
        double ratio = pr / r;
        c.a0 = std::min(c.a0, ratio);
        c.a1 = std::max(c.a1, ratio);
      }
    }
  }
  if (!(c.a0 > 0.0)) throw OutOfRange("bounds: a0 must be positive (vanishing transition mass)");
  return c;
}

double FiniteMarkovExperiment::transition_hellinger(int t1, int t2) const {
  const auto& p1 = param(t1);
  const auto& p2 = param(t2);
  KahanSum s;
  for (int x = 0; x < states_; ++x) {
    double h = hellinger(p1.rows[static_cast<std::size_t>(x)], p2.rows[static_cast<std::size_t>(x)]);
    s.add(ref_[static_cast<std::size_t>(x)] * h * h);
  }
  return std::sqrt(s.value());
}

double FiniteMarkovExperiment::transition_hellinger_star2(int t1, int t2) const {
  const auto& p1 = param(t1);
  const auto& p2 = param(t2);
  KahanSum s;
  for (int x = 0; x < states_; ++x) {
    double h = hellinger_star(p1.rows[static_cast<std::size_t>(x)],
                              p2.rows[static_cast<std::size_t>(x)]);
    s.add(ref_[static_cast<std::size_t>(x)] * h * h);
  }
  return s.value();
}

double FiniteMarkovExperiment::initial_hellinger_star2(int t1, int t2) const {
  double h = hellinger_star(param(t1).initial, param(t2).initial);
  return h * h;
}

}  // namespace ratelab
