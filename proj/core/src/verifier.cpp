#include "ratelab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ratelab/divergence.hpp"
#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"
#include "ratelab/oracle.hpp"
#include "ratelab/posterior.hpp"

namespace ratelab {
namespace {

constexpr double kExactTol = 1e-12;

void require_open_unit(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ConfigError(std::string(what) + " must lie strictly inside (0, 1)");
  }
}

void require_grid(int params, const GridPrior& prior, std::span<const int> theta1) {
  prior.validate();
  if (static_cast<int>(prior.weights.size()) != params) {
    throw DimensionMismatch("prior size does not match the parameter grid");
  }
  for (int t : theta1) {
    if (t < 0 || t >= params) throw OutOfRange("candidate id outside the parameter grid");
  }
}

std::vector<int> far_ids(std::span<const int> theta1, const MetricFn& d, int truth, double eps) {
  std::vector<int> out;
  for (int t : theta1) {
    if (d(t, truth) > eps) out.push_back(t);
  }
  return out;
}

WeightedParameterSet subset_set(const GridPrior& prior, MetricFn d, std::span<const int> ids) {
  WeightedParameterSet s;
  s.metric = std::move(d);
  for (int t : ids) {
    s.ids.push_back(t);
    s.weights.push_back(prior.weights[static_cast<std::size_t>(t)]);
  }
  return s;
}

// Monte Carlo mean over truth samples of (sum_{t in subset} w_t R_t^beta)^alpha;
// the inner sum is exact for each sampled dataset.
template <typename Experiment>
EstimateWithError mc_power_mean(const Experiment& exp, const GridPrior& prior,
                                std::span<const int> subset, double beta, double alpha,
                                int budget, const Rng& rng) {
  if (budget < 1) throw BudgetZero("Monte Carlo budget must be positive");
  if (subset.empty()) return {0.0, 0.0};
  std::vector<double> samples(static_cast<std::size_t>(budget));
  for (int rep = 0; rep < budget; ++rep) {
    SampleBatch x = exp.sample_truth(rng.derive("power-mc", static_cast<std::uint64_t>(rep)));
    KahanSum v;
    for (int t : subset) {
      double lw = prior.log_weight(t) + beta * exp.log_likelihood_ratio({t}, x);
      if (std::isfinite(lw)) v.add(std::exp(lw));
    }
    samples[static_cast<std::size_t>(rep)] = std::pow(v.value(), alpha);
  }
  double m = mean(samples);
  double se = sample_sd(samples) / std::sqrt(static_cast<double>(budget));
  return {m, se};
}

// Frequency over truth samples of {log sum_t w_t R_t^beta <= log_threshold}.
template <typename Experiment>
EstimateWithError mc_evidence_freq(const Experiment& exp, const GridPrior& prior, double beta,
                                   double log_threshold, int trials, const Rng& rng) {
  if (trials < 1) throw BudgetZero("trial count must be positive");
  int params = exp.parameter_count();
  std::vector<double> lw(static_cast<std::size_t>(params));
  int hits = 0;
  for (int rep = 0; rep < trials; ++rep) {
    SampleBatch x = exp.sample_truth(rng.derive("evidence-mc", static_cast<std::uint64_t>(rep)));
    for (int t = 0; t < params; ++t) {
      lw[static_cast<std::size_t>(t)] =
          prior.log_weight(t) + beta * exp.log_likelihood_ratio({t}, x);
    }
    if (log_sum_exp(lw) <= log_threshold) ++hits;
  }
  double p = static_cast<double>(hits) / static_cast<double>(trials);
  double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return {p, se};
}

void attach_power_oracle(BoundCheck& out, const DiscreteExperiment& exp, const GridPrior& prior,
                         std::span<const int> subset, double beta, double alpha) {
  try {
    out.oracle_lhs = exact_power_integral(exp, prior, subset, beta, alpha);
  } catch (const StateSpaceTooLarge&) {
    return;
  }
  out.has_oracle = true;
  out.oracle_agrees = std::abs(out.lhs.estimate - out.oracle_lhs) <=
                      out.slack_sigmas * out.lhs.stderr_ + kExactTol;
}

void attach_power_oracle(BoundCheck& out, const FiniteMarkovExperiment& m, const GridPrior& prior,
                         std::span<const int> subset, double alpha) {
  out.oracle_lhs = exact_power_integral(m, prior, subset, alpha);
  out.has_oracle = true;
  out.oracle_agrees = std::abs(out.lhs.estimate - out.oracle_lhs) <=
                      out.slack_sigmas * out.lhs.stderr_ + kExactTol;
}

// Binomial agreement band using the exact probability's own scale, so a
// zero empirical frequency still matches a tiny positive oracle value.
void attach_frequency_oracle(BoundCheck& out, double oracle_cdf, int trials) {
  out.oracle_lhs = oracle_cdf;
  out.has_oracle = true;
  double sd_true = std::sqrt(oracle_cdf * (1.0 - oracle_cdf) / static_cast<double>(trials));
  double band = out.slack_sigmas * std::max(out.lhs.stderr_, sd_true) + kExactTol;
  out.oracle_agrees = std::abs(out.lhs.estimate - oracle_cdf) <= band;
}

void settle(BoundCheck& out) {
  out.pass = bound_verdict(out.lhs, out.rhs, out.slack_sigmas);
  if (out.has_oracle && !(out.oracle_lhs <= out.rhs + kExactTol)) out.pass = false;
}

void finalize_curve(RateCurve& curve) {
  if (curve.points.size() < 2) throw ConfigError("a rate curve needs at least two sizes");
  std::vector<double> lx, ly;
  for (const RatePoint& p : curve.points) {
    if (!(p.radius_q90_median > 0)) {
      throw OutOfRange("posterior radius must be positive for the log-log fit");
    }
    lx.push_back(std::log(static_cast<double>(p.n)));
    ly.push_back(std::log(p.radius_q90_median));
  }
  auto [slope, se] = fit_slope(lx, ly);
  curve.slope = slope;
  curve.slope_stderr = se;
  bool monotone = true;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    if (curve.points[i].tail_median > curve.points[i - 1].tail_median) monotone = false;
  }
  double first = curve.points.front().tail_median;
  double last = curve.points.back().tail_median;
  curve.tail_trend_decreasing = monotone && (last < first || last == 0.0);
}

}  // namespace

bool bound_verdict(const EstimateWithError& lhs, double rhs, double slack_sigmas) {
  double tol = lhs.stderr_ > 0 ? slack_sigmas * lhs.stderr_ : kExactTol;
  return lhs.estimate <= rhs + tol;
}

MetricFn product_metric(const DiscreteExperiment& exp, ProductMetric kind) {
  int params = exp.parameter_count();
  double n = exp.n();
  int coords = exp.identical_coordinates() ? 1 : exp.n();
  double mult = exp.identical_coordinates() ? n : 1.0;
  auto dist = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(params) * static_cast<std::size_t>(params), 0.0);
  for (int i = 0; i < params; ++i) {
    for (int j = i + 1; j < params; ++j) {
      KahanSum h2_sum;
      KahanSum log_affinity;
      for (int c = 0; c < coords; ++c) {
        double h = hellinger(exp.pmf(c, {i}), exp.pmf(c, {j}));
        double h2 = h * h;
        h2_sum.add(mult * h2);
        log_affinity.add(mult * std::log1p(-0.5 * h2));
      }
      // Joint-domination bound shared by both metrics:
      //   d^2 <= -(2/n) log prod_i (1 - H_i^2 / 2).
      double cap = -2.0 * log_affinity.value() / n;
      double d2 = kind == ProductMetric::per_coord_hellinger
                      ? h2_sum.value() / n
                      : -2.0 * std::expm1(log_affinity.value()) / n;
      if (!(d2 <= cap * (1.0 + 1e-9) + kExactTol)) {
        throw MetricViolatesIneq1("metric exceeds the joint Hellinger envelope between grid ids " +
                                  std::to_string(i) + " and " + std::to_string(j));
      }
      double d = std::sqrt(std::max(0.0, d2));
      (*dist)[static_cast<std::size_t>(i) * params + j] = d;
      (*dist)[static_cast<std::size_t>(j) * params + i] = d;
    }
  }
  return [dist, params](int i, int j) {
    if (i < 0 || i >= params || j < 0 || j >= params) {
      throw OutOfRange("metric queried outside the parameter grid");
    }
    return (*dist)[static_cast<std::size_t>(i) * params + j];
  };
}

MetricFn transition_metric(const FiniteMarkovExperiment& m) {
  int params = m.parameter_count();
  auto dist = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(params) * static_cast<std::size_t>(params), 0.0);
  for (int i = 0; i < params; ++i) {
    for (int j = i + 1; j < params; ++j) {
      double d = m.transition_hellinger(i, j);
      (*dist)[static_cast<std::size_t>(i) * params + j] = d;
      (*dist)[static_cast<std::size_t>(j) * params + i] = d;
    }
  }
  return [dist, params](int i, int j) {
    if (i < 0 || i >= params || j < 0 || j >= params) {
      throw OutOfRange("metric queried outside the parameter grid");
    }
    return (*dist)[static_cast<std::size_t>(i) * params + j];
  };
}

WeightedParameterSet weighted_set(const GridPrior& prior, MetricFn metric) {
  prior.validate();
  WeightedParameterSet s;
  s.metric = std::move(metric);
  for (std::size_t i = 0; i < prior.weights.size(); ++i) {
    s.ids.push_back(static_cast<int>(i));
    s.weights.push_back(prior.weights[i]);
  }
  return s;
}

BoundCheck check_prop2(const DiscreteExperiment& exp, const GridPrior& prior,
                       std::span<const int> theta1, double eps, double alpha, double delta,
                       ProductMetric metric, int mc_budget, Rng rng) {
  require_grid(exp.parameter_count(), prior, theta1);
  require_open_unit(alpha, "alpha");
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  if (!(delta > 0.0 && delta < 0.5)) {
    throw ConfigError("the test-free evidence bound requires 0 < delta < 1/2");
  }
  MetricFn d = product_metric(exp, metric);
  std::vector<int> far = far_ids(theta1, d, exp.truth().index, eps);

  BoundCheck out;
  out.name = "prop2";
  out.lhs = mc_power_mean(exp, prior, far, 1.0, alpha, mc_budget, rng);
  CoverCertificate cert = hausdorff_constant(subset_set(prior, d, far), delta * eps, alpha);
  double ne2 = exp.n() * eps * eps;
  double gap = 1.0 - 2.0 * delta;
  out.rhs = 2.0 * std::exp(-0.5 * (1.0 - alpha) * gap * gap * ne2) * cert.hausdorff_constant;
  out.config = {
      {"n", static_cast<double>(exp.n())},
      {"eps", eps},
      {"alpha", alpha},
      {"delta", delta},
      {"joint_metric", metric == ProductMetric::joint_hellinger_scaled ? 1.0 : 0.0},
      {"far_count", static_cast<double>(far.size())},
      {"entropy_constant", cert.hausdorff_constant},
      {"mc_budget", static_cast<double>(mc_budget)},
  };
  attach_power_oracle(out, exp, prior, far, 1.0, alpha);
  settle(out);
  return out;
}

BoundCheck check_prop0_prop3(const DiscreteExperiment& exp, const GridPrior& prior,
                             std::span<const int> theta1, double eps, double alpha, double beta,
                             ProductMetric metric, int mc_budget, Rng rng) {
  require_grid(exp.parameter_count(), prior, theta1);
  require_open_unit(alpha, "alpha");
  require_open_unit(beta, "beta");
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  MetricFn d = product_metric(exp, metric);
  std::vector<int> far = far_ids(theta1, d, exp.truth().index, eps);

  BoundCheck out;
  out.name = metric == ProductMetric::per_coord_hellinger ? "prop3" : "prop0";
  out.lhs = mc_power_mean(exp, prior, far, beta, alpha, mc_budget, rng);
  KahanSum far_mass;
  for (int t : far) far_mass.add(prior.weights[static_cast<std::size_t>(t)]);
  double ne2 = exp.n() * eps * eps;
  double power = std::min(beta, 1.0 - beta);
  out.rhs = std::exp(-power * alpha * ne2) * std::pow(far_mass.value(), alpha);
  out.config = {
      {"n", static_cast<double>(exp.n())},
      {"eps", eps},
      {"alpha", alpha},
      {"beta", beta},
      {"joint_metric", metric == ProductMetric::joint_hellinger_scaled ? 1.0 : 0.0},
      {"far_count", static_cast<double>(far.size())},
      {"far_mass", far_mass.value()},
      {"mc_budget", static_cast<double>(mc_budget)},
  };
  attach_power_oracle(out, exp, prior, far, beta, alpha);
  settle(out);
  return out;
}

BoundCheck check_prop4(const FiniteMarkovExperiment& m, const GridPrior& prior,
                       std::span<const int> theta1, double eps, double alpha, double delta,
                       int mc_budget, Rng rng) {
  require_grid(m.parameter_count(), prior, theta1);
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw ConfigError("the chain evidence bound requires 0 < alpha < 1/2");
  }
  if (m.n() % 2 != 0) throw ConfigError("the chain evidence bound requires an even path length");
  MarkovBoundsCertificate b = m.bounds();
  if (!(b.a0 > 0.0) || !(b.a1 >= 1.0) || !(b.a0 <= b.a1)) {
    throw BoundsCertificateInvalid("dominance constants must satisfy 0 < a0 <= a1 and a1 >= 1");
  }
  double cap = std::sqrt(b.a0) / (2.0 * std::sqrt(b.a1));
  if (!(delta > 0.0 && delta < cap)) {
    throw ConfigError("the chain evidence bound requires 0 < delta < sqrt(a0)/(2 sqrt(a1))");
  }
  MetricFn d = transition_metric(m);
  std::vector<int> far = far_ids(theta1, d, m.truth().index, eps);

  BoundCheck out;
  out.name = "prop4";
  out.lhs = mc_power_mean(m, prior, far, 1.0, alpha, mc_budget, rng);
  CoverCertificate cert = hausdorff_constant(subset_set(prior, d, far), delta * eps, alpha);
  double gap = 0.5 * std::sqrt(b.a0) - std::sqrt(b.a1) * delta;
  double ne2 = m.n() * eps * eps;
  out.rhs = 2.0 * std::exp(-(0.5 - alpha) * gap * gap * ne2) * cert.hausdorff_constant;
  out.config = {
      {"n", static_cast<double>(m.n())},
      {"eps", eps},
      {"alpha", alpha},
      {"delta", delta},
      {"a0", b.a0},
      {"a1", b.a1},
      {"far_count", static_cast<double>(far.size())},
      {"entropy_constant", cert.hausdorff_constant},
      {"mc_budget", static_cast<double>(mc_budget)},
  };
  attach_power_oracle(out, m, prior, far, alpha);
  settle(out);
  return out;
}

BoundCheck check_lemma2(const DiscreteExperiment& exp, const GridPrior& prior, double eps,
                        double c, double beta, int trials, Rng rng) {
  require_grid(exp.parameter_count(), prior, {});
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  if (!(c > 0)) throw ConfigError("the deviation constant c must be positive");
  if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("likelihood power must lie in (0, 1]");

  NeighborhoodSpec spec;
  spec.kind = beta == 1.0 ? NeighborhoodKind::wn : NeighborhoodKind::wn_bar;
  spec.epsilon = eps;
  spec.n = exp.n();
  MassEstimate mass = neighborhood_mass(spec, exp, prior);
  if (!(mass.estimate > 0)) {
    throw EmptyNeighborhood("the prior gives no mass to the concentration neighborhood");
  }
  double ne2 = exp.n() * eps * eps;
  double log_threshold = -ne2 * (3.0 + 2.0 * c) * beta + std::log(mass.estimate);

  BoundCheck out;
  out.name = beta == 1.0 ? "lemma2" : "lemma4";
  out.lhs = mc_evidence_freq(exp, prior, beta, log_threshold, trials, rng);
  out.rhs = std::exp(-ne2 * c);
  out.config = {
      {"n", static_cast<double>(exp.n())},
      {"eps", eps},
      {"c", c},
      {"beta", beta},
      {"neighborhood_mass", mass.estimate},
      {"log_threshold", log_threshold},
      {"trials", static_cast<double>(trials)},
  };
  attach_frequency_oracle(out, exact_evidence_cdf(exp, prior, beta, log_threshold), trials);
  settle(out);
  return out;
}

BoundCheck check_lemma5(const FiniteMarkovExperiment& m, const GridPrior& prior, double eps,
                        double c, int trials, Rng rng) {
  require_grid(m.parameter_count(), prior, {});
  if (!(eps > 0)) throw ConfigError("eps must be positive");
  if (!(c > 0)) throw ConfigError("the deviation constant c must be positive");
  MarkovBoundsCertificate b = m.bounds();
  if (!(b.a0 > 0.0) || !(b.a1 >= 1.0) || !(b.a0 <= b.a1)) {
    throw BoundsCertificateInvalid("dominance constants must satisfy 0 < a0 <= a1 and a1 >= 1");
  }

  NeighborhoodSpec spec;
  spec.kind = NeighborhoodKind::wn_markov;
  spec.epsilon = eps;
  spec.n = m.n();
  MassEstimate mass = neighborhood_mass(spec, m, prior);
  if (!(mass.estimate > 0)) {
    throw EmptyNeighborhood("the prior gives no mass to the transition neighborhood");
  }
  double ne2 = m.n() * eps * eps;
  double log_threshold = -ne2 * (3.0 * b.a1 + 4.0 * c) + std::log(mass.estimate);

  BoundCheck out;
  out.name = "lemma5";
  out.lhs = mc_evidence_freq(m, prior, 1.0, log_threshold, trials, rng);
  out.rhs = std::exp(-ne2 * c);
  out.config = {
      {"n", static_cast<double>(m.n())},
      {"eps", eps},
      {"c", c},
      {"a1", b.a1},
      {"neighborhood_mass", mass.estimate},
      {"log_threshold", log_threshold},
      {"trials", static_cast<double>(trials)},
  };
  attach_frequency_oracle(out, exact_evidence_cdf(m, prior, log_threshold), trials);
  settle(out);
  return out;
}

BoundCheck check_entropy_sandwich(const WeightedParameterSet& set, double delta, double alpha) {
  require_open_unit(alpha, "alpha");
  if (!(delta > 0)) throw ConfigError("delta must be positive");
  CoverCertificate cert = hausdorff_constant(set, delta, alpha);
  double mass = set.total_weight();
  double lower = std::pow(mass, alpha);
  double upper =
      lower * std::pow(static_cast<double>(std::max(cert.covering_number, 1)), 1.0 - alpha);

  BoundCheck out;
  out.name = "entropy_sandwich";
  out.lhs = {cert.hausdorff_constant, 0.0};
  out.rhs = upper;
  out.config = {
      {"delta", delta},
      {"alpha", alpha},
      {"points", static_cast<double>(set.size())},
      {"mass", mass},
      {"covering_number", static_cast<double>(cert.covering_number)},
      {"exact", cert.exact ? 1.0 : 0.0},
      {"lower", lower},
  };
  out.pass = bound_verdict(out.lhs, out.rhs, out.slack_sigmas) &&
             lower <= cert.hausdorff_constant + kExactTol;
  return out;
}

std::vector<BoundCheck> check_shell_condition(const WeightedParameterSet& sieve,
                                              const std::function<double(int)>& dist_to_truth,
                                              double eps_n, int n, double alpha, double k3,
                                              double c1, const MassEstimate& mass, int j_max) {
  require_open_unit(alpha, "alpha");
  if (!(eps_n > 0)) throw ConfigError("eps must be positive");
  if (!(k3 >= 0)) throw ConfigError("the entropy exponent must be nonnegative");
  if (!(c1 > 0)) throw ConfigError("the growth constant c1 must be positive");
  if (j_max < 2) throw ConfigError("shells start at j = 2");
  // Conservative prior mass: an MC estimate enters through its lower band.
  double mass_lo = std::max(0.0, mass.estimate - 3.0 * mass.stderr_);

  std::vector<BoundCheck> out;
  for (int j = 2; j <= j_max; ++j) {
    WeightedParameterSet ring = shell(sieve, dist_to_truth, j * eps_n, 2.0 * j * eps_n);
    double constant = 0.0;
    if (ring.size() > 0) {
      constant = hausdorff_constant(ring, j * eps_n, alpha).hausdorff_constant;
    }
    BoundCheck bc;
    bc.name = "shell_condition_j" + std::to_string(j);
    bc.lhs = {std::pow(constant, k3), 0.0};
    bc.rhs = std::exp(c1 * j * j * n * eps_n * eps_n) * std::pow(mass_lo, alpha);
    bc.config = {
        {"j", static_cast<double>(j)},
        {"n", static_cast<double>(n)},
        {"eps", eps_n},
        {"alpha", alpha},
        {"k3", k3},
        {"c1", c1},
        {"shell_count", static_cast<double>(ring.size())},
        {"entropy_constant", constant},
        {"neighborhood_mass", mass.estimate},
    };
    bc.pass = bound_verdict(bc.lhs, bc.rhs, bc.slack_sigmas);
    out.push_back(std::move(bc));
  }
  return out;
}

BoundCheck check_global_condition(const WeightedParameterSet& sieve, double eps_n, int n,
                                  double alpha, double k3, double c1, const MassEstimate& mass) {
  require_open_unit(alpha, "alpha");
  if (!(eps_n > 0)) throw ConfigError("eps must be positive");
  if (!(k3 >= 0)) throw ConfigError("the entropy exponent must be nonnegative");
  if (!(c1 > 0)) throw ConfigError("the growth constant c1 must be positive");
  double mass_lo = std::max(0.0, mass.estimate - 3.0 * mass.stderr_);
  double constant = 0.0;
  if (sieve.size() > 0) constant = hausdorff_constant(sieve, eps_n, alpha).hausdorff_constant;

  BoundCheck out;
  out.name = "global_condition";
  out.lhs = {std::pow(constant, k3), 0.0};
  out.rhs = std::exp(c1 * n * eps_n * eps_n) * std::pow(mass_lo, alpha);
  out.config = {
      {"n", static_cast<double>(n)},
      {"eps", eps_n},
      {"alpha", alpha},
      {"k3", k3},
      {"c1", c1},
      {"sieve_count", static_cast<double>(sieve.size())},
      {"entropy_constant", constant},
      {"neighborhood_mass", mass.estimate},
  };
  out.pass = bound_verdict(out.lhs, out.rhs, out.slack_sigmas);
  return out;
}

std::pair<double, double> fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("slope fit needs matching lengths");
  if (x.size() < 2) throw DimensionMismatch("slope fit needs at least two points");
  double mx = mean(x);
  double my = mean(y);
  KahanSum sxx, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
  }
  if (!(sxx.value() > 0)) throw OutOfRange("slope fit needs distinct abscissae");
  double b = sxy.value() / sxx.value();
  double a = my - b * mx;
  KahanSum rss;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - a - b * x[i];
    rss.add(r * r);
  }
  double se = 0.0;
  if (x.size() > 2) {
    se = std::sqrt(rss.value() / (static_cast<double>(x.size() - 2) * sxx.value()));
  }
  return {b, se};
}

double rate_gauss_seq(double n, double gamma) {
  return std::pow(n, -gamma / (2.0 * gamma + 1.0));
}

double rate_ar(double n) { return std::cbrt(std::sqrt(std::log(n)) / n); }

RateCurve measure_contraction_gauss_seq(const GaussRateConfig& cfg, Rng rng) {
  if (cfg.n_grid.size() < 2) throw ConfigError("a rate curve needs at least two sizes");
  if (!(cfg.gamma > 0)) throw ConfigError("smoothness must be positive");
  if (!(cfg.k_mult > 0)) throw ConfigError("support multiplier must be positive");
  if (!(cfg.r > 0)) throw ConfigError("tail radius multiplier must be positive");
  if (cfg.replicates < 1) throw ConfigError("need at least one replicate");
  if (cfg.posterior_draws < 2) throw ConfigError("need at least two posterior draws");

  RateCurve curve;
  curve.predicted = -cfg.gamma / (2.0 * cfg.gamma + 1.0);
  for (int n : cfg.n_grid) {
    if (n < 2) throw ConfigError("sizes must be at least 2");
    double eps = rate_gauss_seq(n, cfg.gamma);
    int dim = n;
    int k = static_cast<int>(
        std::floor(cfg.k_mult * std::pow(n, 1.0 / (2.0 * cfg.gamma + 1.0))));
    k = std::clamp(k, 1, dim);
    std::vector<double> theta0(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      theta0[static_cast<std::size_t>(i)] = std::pow(i + 1.0, -2.0);
    }
    GaussSeqModel model = GaussSeqModel::coupled(theta0, n, cfg.rho);
    GaussSeqPrior prior{k, cfg.gamma};
    KahanSum tail2_sum;
    for (int i = k; i < dim; ++i) {
      tail2_sum.add(theta0[static_cast<std::size_t>(i)] * theta0[static_cast<std::size_t>(i)]);
    }
    double tail2 = tail2_sum.value();
    std::string tag = "seq-n" + std::to_string(n);

    std::vector<double> tails(static_cast<std::size_t>(cfg.replicates));
    std::vector<double> radii(static_cast<std::size_t>(cfg.replicates));
    for (int rep = 0; rep < cfg.replicates; ++rep) {
      std::vector<double> x =
          model.sample_truth(rng.derive(tag + "-truth", static_cast<std::uint64_t>(rep)));
      GaussSeqPosterior post = gauss_seq_posterior_exact(model, prior, x);
      Rng draw_rng = rng.derive(tag + "-draw", static_cast<std::uint64_t>(rep));
      std::vector<double> dists(static_cast<std::size_t>(cfg.posterior_draws));
      int beyond = 0;
      for (int b = 0; b < cfg.posterior_draws; ++b) {
        std::vector<double> theta = post.sample(draw_rng);
        KahanSum sq;
        sq.add(tail2);
        for (int i = 0; i < k; ++i) {
          double diff = theta[static_cast<std::size_t>(i)] - theta0[static_cast<std::size_t>(i)];
          sq.add(diff * diff);
        }
        double dist = std::sqrt(sq.value());
        dists[static_cast<std::size_t>(b)] = dist;
        if (dist >= cfg.r * eps) ++beyond;
      }
      tails[static_cast<std::size_t>(rep)] =
          static_cast<double>(beyond) / static_cast<double>(cfg.posterior_draws);
      radii[static_cast<std::size_t>(rep)] = quantile(dists, 0.9);
    }
    curve.points.push_back({n, eps, median(tails), median(radii),
                            static_cast<double>(cfg.posterior_draws)});
  }
  finalize_curve(curve);
  return curve;
}

RateCurve measure_contraction_ar(const ArRateConfig& cfg, Rng rng) {
  if (cfg.n_grid.size() < 2) throw ConfigError("a rate curve needs at least two sizes");
  if (!(cfg.amplitude > 0)) throw ConfigError("coefficient amplitude must be positive");
  if (!(std::abs(cfg.drift_scale) <= cfg.amplitude)) {
    throw ConfigError("the true drift must stay within the coefficient amplitude");
  }
  if (cfg.cells < 1) throw ConfigError("need at least one cell");
  if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) throw ConfigError("likelihood power must lie in (0, 1]");
  if (!(cfg.r > 0)) throw ConfigError("tail radius multiplier must be positive");
  if (cfg.replicates < 1) throw ConfigError("need at least one replicate");

  RateCurve curve;
  curve.predicted = -1.0 / 3.0;
  for (int n : cfg.n_grid) {
    if (n < 3) throw ConfigError("sizes must be at least 3");
    double eps = rate_ar(n);
    if (!(eps < 1.0)) throw OutOfRange("rate must be below one to set the window");
    double window = 2.0 * std::sqrt(std::log(1.0 / eps));
    StepGrid grid(window, cfg.cells);
    double scale = cfg.drift_scale;
    ArModel model([scale](double x) { return scale * std::tanh(x); }, cfg.amplitude, grid);
    StepUniformPrior prior{cfg.amplitude, cfg.cells};
    std::string tag = "ar-n" + std::to_string(n);

    std::vector<double> tails(static_cast<std::size_t>(cfg.replicates));
    std::vector<double> radii(static_cast<std::size_t>(cfg.replicates));
    double min_ess = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < cfg.replicates; ++rep) {
      std::vector<double> path =
          model.sample_truth(n, rng.derive(tag + "-truth", static_cast<std::uint64_t>(rep)));
      ArPathStats stats = model.path_stats(path);
      Rng draw_rng = rng.derive(tag + "-prior", static_cast<std::uint64_t>(rep));
      std::vector<double> llr(static_cast<std::size_t>(cfg.snis_budget));
      std::vector<double> dist(static_cast<std::size_t>(cfg.snis_budget));
      for (int b = 0; b < cfg.snis_budget; ++b) {
        std::vector<double> beta = prior.sample(draw_rng);
        llr[static_cast<std::size_t>(b)] = model.log_likelihood_ratio(beta, stats);
        dist[static_cast<std::size_t>(b)] = model.l2_to_truth(beta);
      }
      ImportanceResult imp = importance_posterior(llr, cfg.beta);
      if (imp.degenerate) {
        throw DegenerateESS("importance sample collapsed at n = " + std::to_string(n) +
                            " (ess = " + std::to_string(imp.ess) + ")");
      }
      min_ess = std::min(min_ess, imp.ess);
      tails[static_cast<std::size_t>(rep)] =
          posterior_tail_mass(imp.log_weights, dist, cfg.r * eps);
      radii[static_cast<std::size_t>(rep)] = weighted_quantile(imp.log_weights, dist, 0.9);
    }
    curve.points.push_back({n, eps, median(tails), median(radii), min_ess});
  }
  finalize_curve(curve);
  return curve;
}

namespace {

DiscreteExperiment battery_binary(int n) {
  return DiscreteExperiment(
      {{0.5, 0.5}, {0.35, 0.65}, {0.4, 0.6}, {0.6, 0.4}, {0.65, 0.35}}, n, 0);
}

// One-sided grid: every alternative overshoots the truth, so small-evidence
// deviations have detectable (tiny but positive) probability.
DiscreteExperiment battery_binary_onesided(int n) {
  return DiscreteExperiment(
      {{0.5, 0.5}, {0.6, 0.4}, {0.65, 0.35}, {0.7, 0.3}, {0.75, 0.25}}, n, 0);
}

DiscreteExperiment battery_ternary() {
  std::vector<std::vector<std::vector<double>>> tables(12);
  for (int c = 0; c < 12; ++c) {
    double s = 0.02 * (c % 3);
    for (int t = 0; t < 7; ++t) {
      double q = 0.25 + 0.05 * t;
      tables[static_cast<std::size_t>(c)].push_back({q + s, 0.3, 0.7 - q - s});
    }
  }
  return DiscreteExperiment::inid(std::move(tables), 3);
}

FiniteMarkovExperiment battery_chain(int n) {
  using ChainParam = FiniteMarkovExperiment::ChainParam;
  std::vector<ChainParam> params;
  params.push_back({{0.5, 0.5}, {{0.6, 0.4}, {0.35, 0.65}}});
  params.push_back({{0.5, 0.5}, {{0.5, 0.5}, {0.45, 0.55}}});
  params.push_back({{0.5, 0.5}, {{0.7, 0.3}, {0.3, 0.7}}});
  params.push_back({{0.5, 0.5}, {{0.55, 0.45}, {0.5, 0.5}}});
  params.push_back({{0.5, 0.5}, {{0.65, 0.35}, {0.25, 0.75}}});
  return FiniteMarkovExperiment(std::move(params), n, 0, {0.5, 0.5});
}

}  // namespace

std::vector<BoundCheck> run_battery(int mc_budget, Rng rng) {
  if (mc_budget < 100) throw ConfigError("the battery needs at least 100 samples per check");
  std::vector<int> grid5{0, 1, 2, 3, 4};
  std::vector<int> grid7{0, 1, 2, 3, 4, 5, 6};
  GridPrior uniform5 = GridPrior::uniform(5);
  GridPrior uniform7 = GridPrior::uniform(7);
  GridPrior off_truth5{{0.0, 0.25, 0.25, 0.25, 0.25}};

  DiscreteExperiment binary = battery_binary(20);
  DiscreteExperiment ternary = battery_ternary();
  DiscreteExperiment onesided = battery_binary_onesided(30);
  FiniteMarkovExperiment chain = battery_chain(20);

  std::uint64_t idx = 0;
  auto next = [&rng, &idx]() { return rng.derive("battery", idx++); };

  std::vector<BoundCheck> out;
  out.push_back(check_prop2(binary, uniform5, grid5, 0.12, 0.25, 0.25,
                            ProductMetric::per_coord_hellinger, mc_budget, next()));
  out.push_back(check_prop2(binary, uniform5, grid5, 0.12, 0.5, 0.25,
                            ProductMetric::per_coord_hellinger, mc_budget, next()));
  out.push_back(check_prop2(binary, uniform5, grid5, 0.12, 0.75, 0.25,
                            ProductMetric::per_coord_hellinger, mc_budget, next()));
  out.push_back(check_prop2(ternary, uniform7, grid7, 0.08, 0.5, 0.25,
                            ProductMetric::per_coord_hellinger, mc_budget, next()));
  out.push_back(check_prop0_prop3(binary, uniform5, grid5, 0.12, 0.5, 0.5,
                                  ProductMetric::joint_hellinger_scaled, mc_budget, next()));
  out.push_back(check_prop0_prop3(binary, uniform5, grid5, 0.12, 0.5, 0.3,
                                  ProductMetric::per_coord_hellinger, mc_budget, next()));
  out.push_back(check_prop0_prop3(binary, uniform5, grid5, 0.12, 0.5, 0.5,
                                  ProductMetric::per_coord_hellinger, mc_budget, next()));
  out.push_back(check_prop0_prop3(binary, uniform5, grid5, 0.12, 0.5, 0.7,
                                  ProductMetric::per_coord_hellinger, mc_budget, next()));
  out.push_back(check_prop4(chain, uniform5, grid5, 0.09, 0.25, 0.14, mc_budget, next()));
  out.push_back(check_prop4(chain, uniform5, grid5, 0.09, 0.25, 0.26, mc_budget, next()));
  out.push_back(check_lemma2(onesided, off_truth5, 0.2, 1.0, 1.0, mc_budget, next()));
  out.push_back(check_lemma2(onesided, off_truth5, 0.2, 1.0, 0.5, mc_budget, next()));
  out.push_back(check_lemma5(chain, off_truth5, 0.3, 1.0, mc_budget, next()));
  return out;
}

}  // namespace ratelab
