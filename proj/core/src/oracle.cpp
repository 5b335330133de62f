#include "ratelab/oracle.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "ratelab/errors.hpp"

namespace ratelab {
namespace {

constexpr long double kLNegInf = -std::numeric_limits<long double>::infinity();

// Visits every outcome-count vector of an identical-coordinate experiment
// with its log class probability under the truth and the log likelihood
// ratio of every parameter; zero-probability classes are skipped.
void for_each_count_class(
    const DiscreteExperiment& exp,
    const std::function<void(long double log_prob, std::span<const long double> log_ratio)>& fn) {
  const int n = exp.n();
  const int outcomes = exp.outcome_count(0);
  const int params = exp.parameter_count();
  std::span<const double> truth = exp.pmf(0, exp.truth());

  std::vector<std::vector<long double>> log_tables(static_cast<std::size_t>(params));
  for (int t = 0; t < params; ++t) {
    std::span<const double> row = exp.pmf(0, ParameterId{t});
    log_tables[static_cast<std::size_t>(t)].resize(static_cast<std::size_t>(outcomes));
    for (int o = 0; o < outcomes; ++o) {
      log_tables[static_cast<std::size_t>(t)][static_cast<std::size_t>(o)] =
          row[static_cast<std::size_t>(o)] > 0.0
              ? static_cast<long double>(std::log(row[static_cast<std::size_t>(o)]))
              : kLNegInf;
    }
  }

  std::vector<int> counts(static_cast<std::size_t>(outcomes), 0);
  std::vector<long double> log_ratio(static_cast<std::size_t>(params));
  std::function<void(int, int, long double, long double)> recurse =
      [&](int outcome, int left, long double log_coeff, long double log_prob_part) {
        if (outcome == outcomes - 1) {
          counts[static_cast<std::size_t>(outcome)] = left;
          long double tp = truth[static_cast<std::size_t>(outcome)];
          if (left > 0 && tp <= 0.0) return;
          long double log_prob = log_coeff - std::lgamma(left + 1.0L) + log_prob_part;
          if (left > 0) log_prob += left * std::log(tp);
          long double log_truth_term = 0.0L;
          for (int o = 0; o < outcomes; ++o) {
            int c = counts[static_cast<std::size_t>(o)];
            if (c > 0) {
              log_truth_term +=
                  c * log_tables[static_cast<std::size_t>(exp.truth().index)]
                                [static_cast<std::size_t>(o)];
            }
          }
          for (int t = 0; t < params; ++t) {
            long double lr = 0.0L;
            for (int o = 0; o < outcomes; ++o) {
              int c = counts[static_cast<std::size_t>(o)];
              if (c > 0) {
                long double lt = log_tables[static_cast<std::size_t>(t)][static_cast<std::size_t>(o)];
                if (lt == kLNegInf) {
                  lr = kLNegInf;
                  break;
                }
                lr += c * lt;
              }
            }
            log_ratio[static_cast<std::size_t>(t)] =
                lr == kLNegInf ? kLNegInf : lr - log_truth_term;
          }
          fn(log_prob, log_ratio);
          return;
        }
        long double tp = truth[static_cast<std::size_t>(outcome)];
        for (int c = 0; c <= left; ++c) {
          counts[static_cast<std::size_t>(outcome)] = c;
          if (c > 0 && tp <= 0.0) break;
          long double part = log_prob_part;
          if (c > 0) part += c * std::log(tp);
          recurse(outcome + 1, left - c, log_coeff - std::lgamma(c + 1.0L), part);
        }
      };
  recurse(0, n, std::lgamma(n + 1.0L), 0.0L);
}

// Full-path enumeration for per-coordinate tables; recursion over
// coordinates carrying the truth log density and all log ratios.
void for_each_path(
    const DiscreteExperiment& exp, std::size_t state_budget,
    const std::function<void(long double log_prob, std::span<const long double> log_ratio)>& fn) {
  const int n = exp.n();
  const int params = exp.parameter_count();
  std::size_t states = 1;
  for (int i = 0; i < n; ++i) {
    states *= static_cast<std::size_t>(exp.outcome_count(i));
    if (states > state_budget) {
      throw StateSpaceTooLarge("exact oracle: path enumeration over the state budget");
    }
  }
  std::vector<long double> log_ratio(static_cast<std::size_t>(params), 0.0L);
  std::function<void(int, long double)> recurse = [&](int coord, long double log_prob) {
    if (coord == n) {
      fn(log_prob, log_ratio);
      return;
    }
    std::span<const double> truth = exp.pmf(coord, exp.truth());
    for (int o = 0; o < exp.outcome_count(coord); ++o) {
      double tp = truth[static_cast<std::size_t>(o)];
      if (tp <= 0.0) continue;
      long double lt = std::log(static_cast<long double>(tp));
      std::vector<long double> saved = log_ratio;
      for (int t = 0; t < params; ++t) {
        double p = exp.pmf(coord, ParameterId{t})[static_cast<std::size_t>(o)];
        if (p <= 0.0) {
          log_ratio[static_cast<std::size_t>(t)] = kLNegInf;
        } else if (log_ratio[static_cast<std::size_t>(t)] != kLNegInf) {
          log_ratio[static_cast<std::size_t>(t)] +=
              std::log(static_cast<long double>(p)) - lt;
        }
      }
      recurse(coord + 1, log_prob + lt);
      log_ratio = saved;
    }
  };
  recurse(0, 0.0L);
}

void for_each_class(
    const DiscreteExperiment& exp, std::size_t state_budget,
    const std::function<void(long double log_prob, std::span<const long double> log_ratio)>& fn) {
  if (exp.identical_coordinates()) {
    for_each_count_class(exp, fn);
  } else {
    for_each_path(exp, state_budget, fn);
  }
}

long double subset_integral(std::span<const long double> log_ratio, const GridPrior& prior,
                            std::span<const int> subset, double beta) {
  long double v = 0.0L;
  for (int t : subset) {
    long double lr = log_ratio[static_cast<std::size_t>(t)];
    if (lr == kLNegInf) continue;
    long double w = prior.weights[static_cast<std::size_t>(t)];
    if (w <= 0.0L) continue;
    v += w * std::exp(static_cast<long double>(beta) * lr);
  }
  return v;
}

// Chain classes: map from (x0, current state, flattened transition counts)
// to path probability under the truth.
using ChainKey = std::vector<int>;

std::map<ChainKey, long double> chain_classes(const FiniteMarkovExperiment& m) {
  const int s = m.state_count();
  const auto& truth = m.param(m.truth().index);
  std::map<ChainKey, long double> cur;
  for (int x0 = 0; x0 < s; ++x0) {
    double q = truth.initial[static_cast<std::size_t>(x0)];
    if (q <= 0.0) continue;
    ChainKey key(static_cast<std::size_t>(2 + s * s), 0);
    key[0] = x0;
    key[1] = x0;
    cur[key] = static_cast<long double>(q);
  }
  for (int step = 0; step < m.n(); ++step) {
    std::map<ChainKey, long double> next;
    for (const auto& [key, mass] : cur) {
      int state = key[1];
      for (int y = 0; y < s; ++y) {
        double p = truth.rows[static_cast<std::size_t>(state)][static_cast<std::size_t>(y)];
        if (p <= 0.0) continue;
        ChainKey nk = key;
        nk[1] = y;
        nk[static_cast<std::size_t>(2 + state * s + y)] += 1;
        next[nk] += mass * static_cast<long double>(p);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<long double> chain_log_ratios(const FiniteMarkovExperiment& m, const ChainKey& key) {
  const int s = m.state_count();
  const auto& truth = m.param(m.truth().index);
  std::vector<long double> out(static_cast<std::size_t>(m.parameter_count()));
  int x0 = key[0];
  long double log_truth = std::log(
      static_cast<long double>(truth.initial[static_cast<std::size_t>(x0)]));
  for (int x = 0; x < s; ++x) {
    for (int y = 0; y < s; ++y) {
      int c = key[static_cast<std::size_t>(2 + x * s + y)];
      if (c > 0) {
        log_truth += c * std::log(static_cast<long double>(
                             truth.rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]));
      }
    }
  }
  for (int t = 0; t < m.parameter_count(); ++t) {
    const auto& par = m.param(t);
    double q = par.initial[static_cast<std::size_t>(x0)];
    if (q <= 0.0) {
      out[static_cast<std::size_t>(t)] = kLNegInf;
      continue;
    }
    long double lp = std::log(static_cast<long double>(q));
    bool dead = false;
    for (int x = 0; x < s && !dead; ++x) {
      for (int y = 0; y < s; ++y) {
        int c = key[static_cast<std::size_t>(2 + x * s + y)];
        if (c == 0) continue;
        double p = par.rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        if (p <= 0.0) {
          dead = true;
          break;
        }
        lp += c * std::log(static_cast<long double>(p));
      }
    }
    out[static_cast<std::size_t>(t)] = dead ? kLNegInf : lp - log_truth;
  }
  return out;
}

void check_prior(const GridPrior& prior, int params, std::span<const int> subset) {
  prior.validate();
  if (static_cast<int>(prior.weights.size()) != params) {
    throw DimensionMismatch("exact oracle: prior size");
  }
  for (int t : subset) {
    if (t < 0 || t >= params) throw OutOfRange("exact oracle: subset index");
  }
}

}  // namespace

double exact_power_integral(const DiscreteExperiment& exp, const GridPrior& prior,
                            std::span<const int> subset, double beta, double alpha,
                            std::size_t state_budget) {
  check_prior(prior, exp.parameter_count(), subset);
  if (!(beta > 0.0 && beta <= 1.0)) throw OutOfRange("exact_power_integral: beta in (0,1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw OutOfRange("exact_power_integral: alpha in (0,1)");
  long double acc = 0.0L;
  for_each_class(exp, state_budget,
                 [&](long double log_prob, std::span<const long double> log_ratio) {
                   long double v = subset_integral(log_ratio, prior, subset, beta);
                   if (v > 0.0L) {
                     acc += std::exp(log_prob + static_cast<long double>(alpha) * std::log(v));
                   }
                 });
  return static_cast<double>(acc);
}

double exact_evidence_cdf(const DiscreteExperiment& exp, const GridPrior& prior, double beta,
                          double log_threshold, std::size_t state_budget) {
  std::vector<int> all(static_cast<std::size_t>(exp.parameter_count()));
  for (int t = 0; t < exp.parameter_count(); ++t) all[static_cast<std::size_t>(t)] = t;
  check_prior(prior, exp.parameter_count(), all);
  if (!(beta > 0.0 && beta <= 1.0)) throw OutOfRange("exact_evidence_cdf: beta in (0,1]");
  long double acc = 0.0L;
  long double thresh = log_threshold;
  for_each_class(exp, state_budget,
                 [&](long double log_prob, std::span<const long double> log_ratio) {
                   long double v = subset_integral(log_ratio, prior, all, beta);
                   long double lv = v > 0.0L ? std::log(v) : kLNegInf;
                   if (lv <= thresh) acc += std::exp(log_prob);
                 });
  return static_cast<double>(acc);
}

double exact_power_integral(const FiniteMarkovExperiment& m, const GridPrior& prior,
                            std::span<const int> subset, double alpha) {
  check_prior(prior, m.parameter_count(), subset);
  if (!(alpha > 0.0 && alpha < 1.0)) throw OutOfRange("exact_power_integral: alpha in (0,1)");
  long double acc = 0.0L;
  for (const auto& [key, mass] : chain_classes(m)) {
    std::vector<long double> log_ratio = chain_log_ratios(m, key);
    long double v = subset_integral(log_ratio, prior, subset, 1.0);
    if (v > 0.0L) acc += mass * std::exp(static_cast<long double>(alpha) * std::log(v));
  }
  return static_cast<double>(acc);
}

double exact_evidence_cdf(const FiniteMarkovExperiment& m, const GridPrior& prior,
                          double log_threshold) {
  std::vector<int> all(static_cast<std::size_t>(m.parameter_count()));
  for (int t = 0; t < m.parameter_count(); ++t) all[static_cast<std::size_t>(t)] = t;
  check_prior(prior, m.parameter_count(), all);
  long double acc = 0.0L;
  for (const auto& [key, mass] : chain_classes(m)) {
    std::vector<long double> log_ratio = chain_log_ratios(m, key);
    long double v = subset_integral(log_ratio, prior, all, 1.0);
    long double lv = v > 0.0L ? std::log(v) : kLNegInf;
    if (lv <= static_cast<long double>(log_threshold)) acc += mass;
  }
  return static_cast<double>(acc);
}

}  // namespace ratelab
