#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ratelab/ar_model.hpp"
#include "ratelab/entropy.hpp"
#include "ratelab/experiment.hpp"
#include "ratelab/gauss_seq.hpp"
#include "ratelab/markov.hpp"
#include "ratelab/neighborhood.hpp"
#include "ratelab/prior.hpp"
#include "ratelab/rng.hpp"

namespace ratelab {

struct EstimateWithError {
  double estimate = 0;
  double stderr_ = 0;
};

// One runnable inequality: pass iff lhs.estimate <= rhs + slack_sigmas *
// lhs.stderr, with a 1e-12 tolerance replacing the slack on fully exact
// paths (stderr 0). When an exhaustive oracle ran, oracle_lhs holds its
// value and oracle_agrees whether the Monte Carlo estimate sits within the
// matching 3 sigma band.
struct BoundCheck {
  std::string name;
  std::vector<std::pair<std::string, double>> config;
  EstimateWithError lhs;
  double rhs = 0;
  double slack_sigmas = 3.0;
  bool pass = false;
  bool has_oracle = false;
  double oracle_lhs = 0;
  bool oracle_agrees = true;
};

bool bound_verdict(const EstimateWithError& lhs, double rhs, double slack_sigmas);

// Metrics for product experiments: d0 is the root mean squared
// per-coordinate Hellinger distance; the joint variant is the Hellinger
// distance of the product measure scaled by 1/sqrt(n). Construction
// re-verifies the joint-domination inequality
//   d(t1,t2)^2 <= -(2/n) log(1 - H_joint^2/2)
// on every grid pair and throws MetricViolatesIneq1 on failure.
enum class ProductMetric { per_coord_hellinger, joint_hellinger_scaled };

MetricFn product_metric(const DiscreteExperiment& exp, ProductMetric kind);

// nu-averaged transition Hellinger distance as a grid metric.
MetricFn transition_metric(const FiniteMarkovExperiment& m);

// The whole grid as a weighted set under the prior.
WeightedParameterSet weighted_set(const GridPrior& prior, MetricFn metric);

// Test-free evidence bound for the likelihood-ratio integral over the far
// set {theta in theta1 : d(theta, theta0) > eps}:
//   E (integral)^alpha <= 2 e^{-(1/2)(1-alpha)(1-2 delta)^2 n eps^2}
//                         * C(delta eps, far set, alpha, d).
BoundCheck check_prop2(const DiscreteExperiment& exp, const GridPrior& prior,
                       std::span<const int> theta1, double eps, double alpha, double delta,
                       ProductMetric metric, int mc_budget, Rng rng);

// Power-likelihood variant with the prior-mass bound
//   E (integral of R^beta)^alpha <= e^{-((1-beta) ^ beta) alpha n eps^2} mass^alpha;
// named prop3 under the per-coordinate metric and prop0 under the joint one.
BoundCheck check_prop0_prop3(const DiscreteExperiment& exp, const GridPrior& prior,
                             std::span<const int> theta1, double eps, double alpha, double beta,
                             ProductMetric metric, int mc_budget, Rng rng);

// Chain variant under the transition metric with dominance constants
// (a0, a1) from the experiment's certificate; requires even n,
// 0 < alpha < 1/2 and 0 < delta < sqrt(a0)/(2 sqrt(a1)):
//   rhs = 2 e^{-(1/2 - alpha)(sqrt(a0)/2 - sqrt(a1) delta)^2 n eps^2} C(delta eps, ...).
BoundCheck check_prop4(const FiniteMarkovExperiment& m, const GridPrior& prior,
                       std::span<const int> theta1, double eps, double alpha, double delta,
                       int mc_budget, Rng rng);

// Evidence lower-deviation frequency for product experiments. beta = 1
// uses the joint neighborhood and threshold e^{-n eps^2 (3+2c)} mass
// (lemma2); beta < 1 uses the averaged neighborhood and exponent scaled by
// beta (lemma4). rhs is e^{-n eps^2 c} in both cases.
BoundCheck check_lemma2(const DiscreteExperiment& exp, const GridPrior& prior, double eps,
                        double c, double beta, int trials, Rng rng);

// Chain version: threshold e^{-n eps^2 (3 a1 + 4c)} times the mass of the
// transition neighborhood.
BoundCheck check_lemma5(const FiniteMarkovExperiment& m, const GridPrior& prior, double eps,
                        double c, int trials, Rng rng);

// Exact partition-constant sandwich mass^alpha <= C <= mass^alpha N^{1-alpha}.
BoundCheck check_entropy_sandwich(const WeightedParameterSet& set, double delta, double alpha);

// Entropy-versus-concentration condition per shell j = 2..j_max:
//   C(j eps, {j eps < d <= 2 j eps}, alpha, d)^{K3} <= e^{c1 j^2 n eps^2} mass^alpha
// where mass estimates the prior's concentration-neighborhood weight.
std::vector<BoundCheck> check_shell_condition(const WeightedParameterSet& sieve,
                                              const std::function<double(int)>& dist_to_truth,
                                              double eps_n, int n, double alpha, double k3,
                                              double c1, const MassEstimate& mass, int j_max);

// Whole-sieve variant C(eps, sieve, alpha, d)^{K3} <= e^{c1 n eps^2} mass^alpha.
BoundCheck check_global_condition(const WeightedParameterSet& sieve, double eps_n, int n,
                                  double alpha, double k3, double c1, const MassEstimate& mass);

// One size on a contraction curve: medians over replicates of the posterior
// tail mass outside r eps_n and of the 0.9-quantile posterior radius.
struct RatePoint {
  int n = 0;
  double epsilon_n = 0;
  double tail_median = 0;
  double radius_q90_median = 0;
  double min_ess = 0;
};

struct RateCurve {
  std::vector<RatePoint> points;
  double slope = 0;         // log median radius against log n
  double slope_stderr = 0;
  double predicted = 0;     // theoretical exponent
  bool tail_trend_decreasing = false;
};

// Least squares slope of y against x with its standard error.
std::pair<double, double> fit_slope(std::span<const double> x, std::span<const double> y);

double rate_gauss_seq(double n, double gamma);  // n^{-gamma/(2 gamma + 1)}
double rate_ar(double n);                       // (sqrt(log n) / n)^{1/3}

// Sequence-model contraction (exact conjugate posterior). Truth is the
// polynomially decaying sequence theta_{0,i} = i^{-2}; the prior support
// grows as k = floor(k_mult n^{1/(2 gamma + 1)}). Distances to the truth
// include the tail beyond the prior support.
struct GaussRateConfig {
  std::vector<int> n_grid{64, 256, 1024, 4096, 16384};
  double gamma = 1.0;
  double rho = 0.0;
  double k_mult = 2.0;
  double r = 2.0;
  int replicates = 20;
  int posterior_draws = 256;
};
RateCurve measure_contraction_gauss_seq(const GaussRateConfig& cfg, Rng rng);

// Step-drift autoregression contraction via importance sampling. The true
// drift is drift_scale * tanh; the window follows the rate while the cell
// count stays fixed (small, keeping the sampler's effective size healthy).
// A collapsed sample raises DegenerateESS naming the offending n.
struct ArRateConfig {
  std::vector<int> n_grid{50, 100, 200, 400};
  double amplitude = 1.5;    // coefficient cube half-width
  double drift_scale = 0.75; // half the amplitude
  int cells = 2;
  double beta = 1.0;         // likelihood power; 1 is the plain posterior
  double r = 4.0;
  int replicates = 15;
  int snis_budget = 20000;
};
RateCurve measure_contraction_ar(const ArRateConfig& cfg, Rng rng);

// The registered acceptance battery of bound checks.
std::vector<BoundCheck> run_battery(int mc_budget, Rng rng);

}  // namespace ratelab
