#include "ratelab/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {

ExactPosterior pseudoposterior_exact(const GridPrior& prior, std::span<const double> llr,
                                     double beta) {
  prior.validate();
  if (prior.weights.size() != llr.size()) {
    throw DimensionMismatch("pseudoposterior_exact: prior/likelihood sizes");
  }
  if (!(beta > 0.0 && beta <= 1.0)) throw OutOfRange("pseudoposterior_exact: beta in (0,1]");
  ExactPosterior post;
  post.log_weights.resize(llr.size());
  for (std::size_t i = 0; i < llr.size(); ++i) {
    post.log_weights[i] = prior.log_weight(static_cast<int>(i)) + beta * llr[i];
  }
  post.log_evidence = log_sum_exp(post.log_weights);
  if (post.log_evidence == kNegInf) {
    throw AllZeroLikelihood("pseudoposterior_exact: zero likelihood on the whole support");
  }
  for (double& w : post.log_weights) w -= post.log_evidence;
  return post;
}

ExactPosterior posterior_exact(const GridPrior& prior, std::span<const double> llr) {
  return pseudoposterior_exact(prior, llr, 1.0);
}

void ImportanceResult::require_healthy() const {
  if (degenerate) {
    throw DegenerateESS("importance sample collapsed: ess = " + std::to_string(ess));
  }
}

ImportanceResult importance_posterior(std::span<const double> llr, double beta) {
  if (llr.size() < 100) throw OutOfRange("importance_posterior: budget must be >= 100");
  if (!(beta > 0.0 && beta <= 1.0)) throw OutOfRange("importance_posterior: beta in (0,1]");
  ImportanceResult res;
  res.log_weights.resize(llr.size());
  for (std::size_t i = 0; i < llr.size(); ++i) res.log_weights[i] = beta * llr[i];

  double max_lw = kNegInf;
  for (double lw : res.log_weights) max_lw = std::max(max_lw, lw);
  if (max_lw == kNegInf) {
    throw AllZeroLikelihood("importance_posterior: zero likelihood at every draw");
  }
  std::vector<double> w(llr.size());
  std::vector<double> w2(llr.size());
  for (std::size_t i = 0; i < llr.size(); ++i) {
    w[i] = std::exp(res.log_weights[i] - max_lw);
    w2[i] = w[i] * w[i];
  }
  double sum_w = tree_sum(w);
  double sum_w2 = tree_sum(w2);
  res.ess = sum_w * sum_w / sum_w2;
  res.degenerate = res.ess < 10.0;
  double log_norm = max_lw + std::log(sum_w);
  res.log_evidence = log_norm - std::log(static_cast<double>(llr.size()));
  for (double& lw : res.log_weights) lw -= log_norm;
  return res;
}

double posterior_tail_mass(std::span<const double> log_weights,
                           std::span<const double> distance, double radius) {
  if (log_weights.size() != distance.size()) {
    throw DimensionMismatch("posterior_tail_mass: sizes");
  }
  KahanSum s;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    if (distance[i] >= radius) s.add(std::exp(log_weights[i]));
  }
  return std::min(1.0, s.value());
}

double weighted_quantile(std::span<const double> log_weights,
                         std::span<const double> values, double q) {
  if (log_weights.size() != values.size() || values.empty()) {
    throw DimensionMismatch("weighted_quantile: sizes");
  }
  if (!(q >= 0.0 && q <= 1.0)) throw OutOfRange("weighted_quantile: q in [0,1]");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return a < b;
  });
  KahanSum cum;
  for (std::size_t idx : order) {
    cum.add(std::exp(log_weights[idx]));
    if (cum.value() >= q) return values[idx];
  }
  return values[order.back()];
}

}  // namespace ratelab
