#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "cli/records.hpp"
#include "cli/registry.hpp"
#include "cli/svg.hpp"
#include "ratelab/divergence.hpp"
#include "ratelab/errors.hpp"
#include "ratelab/neighborhood.hpp"
#include "ratelab/numeric.hpp"
#include "ratelab/poisson_reg.hpp"
#include "ratelab/step_function.hpp"
#include "ratelab/verifier.hpp"

namespace ratelab::cli {

namespace fs = std::filesystem;

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

int summarize(const std::string& what, const std::vector<Record>& records) {
  int failures = 0;
  for (const Record& r : records) {
    if (!record_pass(r)) {
      ++failures;
      std::cout << "  FAIL " << r.value("name", r.value("model", std::string("?"))) << "\n";
    }
  }
  std::cout << what << ": " << records.size() << " records, "
            << (records.size() - static_cast<std::size_t>(failures)) << " pass, " << failures
            << " fail\n";
  return failures == 0 ? 0 : 1;
}

std::vector<double> random_pmf(Rng& rng, int outcomes) {
  std::vector<double> p(static_cast<std::size_t>(outcomes));
  double total = 0;
  for (double& v : p) {
    v = 0.1 + rng.uniform01();
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

Record gauss_h2_vs_quadrature(const std::string& name, double delta, double sigma) {
  DenseMatrix precision = DenseMatrix::identity(1);
  precision.at(0, 0) = 1.0 / (sigma * sigma);
  GaussianDivergence closed = gaussian_closed_forms(std::vector<double>{delta}, precision);
  QuadratureRule rule = gauss_legendre(24);
  double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  double bhatta = integrate(rule, 24, -10.0 * sigma, delta + 10.0 * sigma, [&](double x) {
    double e = ((x - delta) * (x - delta) + x * x) / (4.0 * sigma * sigma);
    return norm * std::exp(-e);
  });
  return identity_record(name, "eq", closed.h2, 2.0 - 2.0 * bhatta, 1e-9);
}

Record gauss_irm_vs_quadrature(const std::string& name, double delta, double sigma) {
  DenseMatrix precision = DenseMatrix::identity(1);
  precision.at(0, 0) = 1.0 / (sigma * sigma);
  GaussianDivergence closed = gaussian_closed_forms(std::vector<double>{delta}, precision);
  QuadratureRule rule = gauss_legendre(24);
  double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  double center = 1.5 * delta;
  double irm = integrate(rule, 24, center - 10.0 * sigma, center + 10.0 * sigma, [&](double x) {
    double e = (3.0 * (x - delta) * (x - delta) - x * x) / (4.0 * sigma * sigma);
    return norm * std::exp(-e);
  });
  return identity_record(name, "eq", 1.0 + 1.5 * closed.hstar2, irm, 1e-9);
}

Record poisson_series_vs_direct(const std::string& name, double a, double b) {
  PoissonHstar series = poisson_hstar_bound(a, b, 1.0, 3.0);
  KahanSum irm;
  for (int x = 0; x <= 300; ++x) {
    // Log-space evaluation: the pmf ratio overflows long before the
    // summand stops mattering when b < a.
    double lf = -a + x * std::log(a) - std::lgamma(x + 1.0);
    double lg = -b + x * std::log(b) - std::lgamma(x + 1.0);
    irm.add(std::exp(1.5 * lf - 0.5 * lg));
  }
  double direct = (2.0 / 3.0) * (irm.value() - 1.0);
  return identity_record(name, "eq", series.value, direct, 1e-10);
}

std::vector<Record> identity_records(std::uint64_t seed, int jobs) {
  std::vector<std::function<Record()>> tasks;
  Rng root(seed);

  for (int i = 0; i < 6; ++i) {
    tasks.emplace_back([i, root]() {
      Rng rng = root.derive("identity-affinity", static_cast<std::uint64_t>(i));
      std::vector<double> f = random_pmf(rng, 3);
      std::vector<double> g = random_pmf(rng, 3);
      double h = hellinger(f, g);
      return identity_record("affinity-vs-hellinger-" + std::to_string(i), "eq", affinity(f, g),
                             1.0 - 0.5 * h * h, 1e-12);
    });
  }
  for (int i = 0; i < 6; ++i) {
    tasks.emplace_back([i, root]() {
      Rng rng = root.derive("identity-irm", static_cast<std::uint64_t>(i));
      std::vector<double> f = random_pmf(rng, 3);
      std::vector<double> g = random_pmf(rng, 3);
      double hs = hellinger_star(f, g);
      return identity_record("irm-vs-hellinger-star-" + std::to_string(i), "eq",
                             inverse_root_moment(f, g), 1.0 + 1.5 * hs * hs, 1e-12);
    });
  }
  for (int i = 0; i < 4; ++i) {
    for (int part = 0; part < 2; ++part) {
      tasks.emplace_back([i, part, root]() {
        Rng rng = root.derive("identity-product", static_cast<std::uint64_t>(i));
        std::vector<DensityPair> coords(4);
        for (DensityPair& c : coords) {
          c.f = random_pmf(rng, 2);
          c.g = random_pmf(rng, 2);
        }
        ProductAffinity pa = product_affinity_check(coords);
        if (part == 0) {
          return identity_record("product-hellinger-" + std::to_string(i), "eq",
                                 pa.h2_enumerated, pa.h2_factorized, 1e-12);
        }
        return identity_record("product-hellinger-star-" + std::to_string(i), "eq",
                               pa.hstar2_enumerated, pa.hstar2_factorized, 1e-12);
      });
    }
  }
  for (int i = 0; i < 6; ++i) {
    for (int part = 0; part < 2; ++part) {
      tasks.emplace_back([i, part, root]() {
        Rng rng = root.derive("identity-sandwich", static_cast<std::uint64_t>(i));
        std::vector<double> f = random_pmf(rng, 4);
        std::vector<double> g = random_pmf(rng, 4);
        double h = hellinger(f, g);
        double hs = hellinger_star(f, g);
        if (part == 0) {
          return identity_record("sandwich-lower-" + std::to_string(i), "le",
                                 h / std::sqrt(3.0), hs, 1e-12);
        }
        return identity_record("sandwich-upper-" + std::to_string(i), "le", hs,
                               std::pow(sup_ratio(f, g), 0.25) * h, 1e-12);
      });
    }
  }
  tasks.emplace_back([] { return gauss_h2_vs_quadrature("gauss-hellinger-quadrature-0", 0.8, 1.0); });
  tasks.emplace_back([] { return gauss_h2_vs_quadrature("gauss-hellinger-quadrature-1", 0.5, 1.3); });
  tasks.emplace_back([] { return gauss_irm_vs_quadrature("gauss-irm-quadrature-0", 0.8, 1.0); });
  tasks.emplace_back([] { return gauss_irm_vs_quadrature("gauss-irm-quadrature-1", 0.5, 1.3); });
  tasks.emplace_back([] { return poisson_series_vs_direct("poisson-hstar-series-0", 1.3, 2.1); });
  tasks.emplace_back([] { return poisson_series_vs_direct("poisson-hstar-series-1", 2.6, 1.1); });
  for (int i = 0; i < 2; ++i) {
    tasks.emplace_back([i]() {
      double t = i == 0 ? 0.1 : 0.45;
      double radius2 = (2.0 / 3.0) * std::expm1(1.5 * t);
      return identity_record("concentration-threshold-map-" + std::to_string(i), "eq",
                             1.0 + 1.5 * radius2, std::exp(1.5 * t), 1e-12);
    });
  }

  std::vector<Record> out(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t i) { out[i] = tasks[i](); });
  return out;
}

// Single named bound check driven by the [check] section.
BoundCheck run_single_check(const RunContext& ctx) {
  const Config& cfg = ctx.config;
  std::string name = cfg.require_string("check", "name");
  Rng rng = Rng(ctx.seed).derive("check", 0);
  int budget = cfg.get_int("check", "budget", 10000);
  double alpha = cfg.get_double("check", "alpha", 0.5);
  double delta = cfg.get_double("check", "delta", 0.25);
  double c = cfg.get_double("check", "c", 1.0);

  auto theta_all = [](int count) {
    std::vector<int> ids(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) ids[static_cast<std::size_t>(i)] = i;
    return ids;
  };

  if (name == "prop4" || name == "lemma5") {
    std::string chain_name = cfg.get_string("check", "experiment", "chain2");
    int n = cfg.get_int("check", "n", 20);
    FiniteMarkovExperiment chain = make_chain(chain_name, n);
    if (name == "prop4") {
      GridPrior prior = make_prior(cfg.get_string("check", "prior", "uniform"),
                                   chain.parameter_count(), chain.truth().index);
      return check_prop4(chain, prior, theta_all(chain.parameter_count()),
                         cfg.get_double("check", "eps", 0.09),
                         cfg.get_double("check", "alpha", 0.25),
                         cfg.get_double("check", "delta", 0.14), budget, rng);
    }
    GridPrior prior = make_prior(cfg.get_string("check", "prior", "off-truth"),
                                 chain.parameter_count(), chain.truth().index);
    return check_lemma5(chain, prior, cfg.get_double("check", "eps", 0.3), c,
                        cfg.get_int("check", "trials", budget), rng);
  }

  if (name == "lemma2" || name == "lemma4") {
    std::string exp_name = cfg.get_string("check", "experiment", "binary5-onesided");
    int n = cfg.get_int("check", "n", 30);
    DiscreteExperiment exp = make_experiment(exp_name, n);
    GridPrior prior = make_prior(cfg.get_string("check", "prior", "off-truth"),
                                 exp.parameter_count(), exp.truth().index);
    double beta = cfg.get_double("check", "beta", name == "lemma2" ? 1.0 : 0.5);
    return check_lemma2(exp, prior, cfg.get_double("check", "eps", 0.2), c, beta,
                        cfg.get_int("check", "trials", budget), rng);
  }

  std::string exp_name = cfg.get_string("check", "experiment", "binary5");
  int n = cfg.get_int("check", "n", 20);
  DiscreteExperiment exp = make_experiment(exp_name, n);
  GridPrior prior = make_prior(cfg.get_string("check", "prior", "uniform"),
                               exp.parameter_count(), exp.truth().index);
  std::vector<int> theta1 = theta_all(exp.parameter_count());
  double eps = cfg.get_double("check", "eps", 0.12);

  if (name == "prop2") {
    std::string metric = cfg.get_string("check", "metric", "per-coord");
    if (metric != "per-coord" && metric != "joint") {
      throw ConfigError("check.metric must be 'per-coord' or 'joint'");
    }
    return check_prop2(exp, prior, theta1, eps, alpha, delta,
                       metric == "joint" ? ProductMetric::joint_hellinger_scaled
                                         : ProductMetric::per_coord_hellinger,
                       budget, rng);
  }
  if (name == "prop3" || name == "prop0") {
    double beta = cfg.get_double("check", "beta", 0.5);
    return check_prop0_prop3(exp, prior, theta1, eps, alpha, beta,
                             name == "prop0" ? ProductMetric::joint_hellinger_scaled
                                             : ProductMetric::per_coord_hellinger,
                             budget, rng);
  }
  throw ConfigError("unknown check name '" + name +
                    "'; known: lemma2 lemma4 lemma5 prop0 prop2 prop3 prop4");
}

}  // namespace

RunContext make_context(const CliOptions& options) {
  RunContext ctx;
  if (!options.config_path.empty()) ctx.config = Config::load(options.config_path);

  ctx.seed = ctx.config.get_u64("run", "seed", 20260822);
  ctx.out_dir = ctx.config.get_string("run", "out", "out");
  ctx.jobs = ctx.config.get_int("run", "jobs", 0);
  if (options.seed_given) ctx.seed = options.seed;
  if (options.out_given) ctx.out_dir = options.out_dir;
  if (options.jobs_given) ctx.jobs = options.jobs;

  if (const char* env = std::getenv("RATELAB_JOBS"); env != nullptr && *env != '\0') {
    int jobs = 0;
    const char* end = env;
    while (*end != '\0') ++end;
    auto [ptr, ec] = std::from_chars(env, end, jobs);
    if (ec != std::errc() || ptr != end) {
      throw ConfigError(std::string("RATELAB_JOBS is not an integer: '") + env + "'");
    }
    ctx.jobs = jobs;
  }
  if (ctx.jobs <= 0) {
    ctx.jobs = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  }
  return ctx;
}

int cmd_identity(const RunContext& ctx) {
  ensure_out_dir(ctx.out_dir);
  std::vector<Record> records = identity_records(ctx.seed, ctx.jobs);
  write_jsonl(join_path(ctx.out_dir, "identity.jsonl"), records);
  return summarize("identity-suite", records);
}

int cmd_verify(const RunContext& ctx) {
  ensure_out_dir(ctx.out_dir);
  std::vector<BoundCheck> checks;
  if (ctx.config.has("check", "name")) {
    checks.push_back(run_single_check(ctx));
  } else {
    int budget = ctx.config.get_int("verify", "budget", 10000);
    checks = run_battery(budget, Rng(ctx.seed));
  }

  std::vector<Record> records;
  records.reserve(checks.size());
  bool oracle_mismatch = false;
  for (const BoundCheck& check : checks) {
    records.push_back(check_record(check));
    std::cout << "  " << (check.pass ? "pass" : "FAIL") << ' ' << check.name
              << "  lhs " << check.lhs.estimate << "  rhs " << check.rhs;
    if (check.has_oracle) {
      std::cout << "  oracle " << check.oracle_lhs
                << (check.oracle_agrees ? "" : "  (disagrees with the estimate)");
      if (!check.oracle_agrees) oracle_mismatch = true;
    }
    std::cout << '\n';
  }
  write_jsonl(join_path(ctx.out_dir, "checks.jsonl"), records);
  int rc = summarize("verify", records);
  if (oracle_mismatch) {
    std::cout << "verify: an exhaustive oracle disagrees with its estimator\n";
    rc = 1;
  }
  return rc;
}

int cmd_contract(const RunContext& ctx) {
  ensure_out_dir(ctx.out_dir);
  const Config& cfg = ctx.config;
  std::string model = cfg.get_string("contract", "model", "gauss-seq");

  RateCurve curve;
  std::string rule;
  double band = 0;
  if (model == "gauss-seq") {
    GaussRateConfig gc;
    gc.n_grid = cfg.get_int_list("contract", "n_grid", gc.n_grid);
    gc.gamma = cfg.get_double("contract", "gamma", gc.gamma);
    gc.rho = cfg.get_double("contract", "rho", gc.rho);
    gc.k_mult = cfg.get_double("contract", "k_mult", gc.k_mult);
    gc.r = cfg.get_double("contract", "r", gc.r);
    gc.replicates = cfg.get_int("contract", "replicates", gc.replicates);
    gc.posterior_draws = cfg.get_int("contract", "draws", gc.posterior_draws);
    curve = measure_contraction_gauss_seq(gc, Rng(ctx.seed));
    rule = "slope-band";
    band = cfg.get_double("contract", "band", 0.07);
  } else if (model == "ar-step") {
    ArRateConfig ac;
    ac.n_grid = cfg.get_int_list("contract", "n_grid", ac.n_grid);
    ac.amplitude = cfg.get_double("contract", "amplitude", ac.amplitude);
    ac.drift_scale = cfg.get_double("contract", "drift_scale", ac.drift_scale);
    ac.cells = cfg.get_int("contract", "cells", ac.cells);
    ac.beta = cfg.get_double("contract", "beta", ac.beta);
    ac.r = cfg.get_double("contract", "r", ac.r);
    ac.replicates = cfg.get_int("contract", "replicates", ac.replicates);
    ac.snis_budget = cfg.get_int("contract", "budget", ac.snis_budget);
    curve = measure_contraction_ar(ac, Rng(ctx.seed));
    rule = "tail-trend";
    band = 0;
  } else {
    throw RegistryMiss("unknown contraction model '" + model + "'; known: ar-step gauss-seq");
  }

  std::vector<Record> records{curve_record(model, curve, rule, band)};
  write_jsonl(join_path(ctx.out_dir, "contract-" + model + ".jsonl"), records);
  write_curve_csv(join_path(ctx.out_dir, "contract-" + model + ".csv"), model, curve);
  write_text_file(join_path(ctx.out_dir, "contract-" + model + ".svg"), curve_svg(model, curve));

  std::cout << "  slope " << curve.slope << " +- " << curve.slope_stderr << "  predicted "
            << curve.predicted << "  tail trend "
            << (curve.tail_trend_decreasing ? "decreasing" : "not decreasing") << '\n';
  return summarize("contract " + model, records);
}

int cmd_entropy(const RunContext& ctx) {
  ensure_out_dir(ctx.out_dir);
  const Config& cfg = ctx.config;
  std::string exp_name = cfg.get_string("entropy", "experiment", "binary5");
  int n = cfg.get_int("entropy", "n", 20);
  DiscreteExperiment exp = make_experiment(exp_name, n);
  GridPrior prior = make_prior(cfg.get_string("entropy", "prior", "uniform"),
                               exp.parameter_count(), exp.truth().index);
  std::string metric_name = cfg.get_string("entropy", "metric", "per-coord");
  if (metric_name != "per-coord" && metric_name != "joint") {
    throw ConfigError("entropy.metric must be 'per-coord' or 'joint'");
  }
  MetricFn metric = product_metric(exp, metric_name == "joint"
                                            ? ProductMetric::joint_hellinger_scaled
                                            : ProductMetric::per_coord_hellinger);
  WeightedParameterSet set = weighted_set(prior, metric);

  double delta = cfg.get_double("entropy", "delta", 0.06);
  double alpha = cfg.get_double("entropy", "alpha", 0.5);
  double eps = cfg.get_double("entropy", "eps", 0.15);
  double k3 = cfg.get_double("entropy", "k3", 1.0);
  double c1 = cfg.get_double("entropy", "c1", 2.0);
  int j_max = cfg.get_int("entropy", "j_max", 4);

  NeighborhoodSpec spec;
  spec.kind = NeighborhoodKind::wn_bar;
  spec.epsilon = eps;
  spec.n = exp.n();
  spec.validate();
  MassEstimate mass = neighborhood_mass(spec, exp, prior);

  int truth = exp.truth().index;
  auto dist_to_truth = [metric, truth](int id) { return metric(id, truth); };

  std::vector<BoundCheck> checks;
  checks.push_back(check_entropy_sandwich(set, delta, alpha));
  std::vector<BoundCheck> shells =
      check_shell_condition(set, dist_to_truth, eps, exp.n(), alpha, k3, c1, mass, j_max);
  checks.insert(checks.end(), shells.begin(), shells.end());
  checks.push_back(check_global_condition(set, eps, exp.n(), alpha, k3, c1, mass));

  std::vector<Record> records;
  records.reserve(checks.size());
  for (const BoundCheck& check : checks) {
    records.push_back(check_record(check));
    std::cout << "  " << (check.pass ? "pass" : "FAIL") << ' ' << check.name << "  lhs "
              << check.lhs.estimate << "  rhs " << check.rhs << '\n';
  }
  write_jsonl(join_path(ctx.out_dir, "entropy.jsonl"), records);
  return summarize("entropy", records);
}

int cmd_report(const RunContext& ctx) {
  if (!fs::is_directory(ctx.out_dir)) {
    throw ConfigError("output directory '" + ctx.out_dir + "' does not exist");
  }

  std::vector<std::string> jsonl_files;
  std::vector<std::string> csv_files;
  for (const auto& entry : fs::directory_iterator(ctx.out_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name.size() > 6 && name.substr(name.size() - 6) == ".jsonl") jsonl_files.push_back(name);
    if (name.size() > 4 && name.substr(name.size() - 4) == ".csv") csv_files.push_back(name);
  }
  std::sort(jsonl_files.begin(), jsonl_files.end());
  std::sort(csv_files.begin(), csv_files.end());
  if (jsonl_files.empty()) {
    throw ConfigError("no .jsonl records found in '" + ctx.out_dir + "'");
  }

  std::ostringstream summary;
  int failures = 0;
  std::size_t total = 0;
  for (const std::string& name : jsonl_files) {
    std::vector<Record> records = read_jsonl(join_path(ctx.out_dir, name));
    int file_failures = 0;
    for (const Record& r : records) {
      validate_record(r);
      if (!record_pass(r)) {
        ++file_failures;
        summary << "  FAIL " << r.value("name", r.value("model", std::string("?"))) << '\n';
      }
    }
    total += records.size();
    failures += file_failures;
    summary << name << ": " << records.size() << " records, " << file_failures << " fail\n";

    // Cross-check curve records against their CSV twin when both exist.
    for (const Record& r : records) {
      if (r.value("type", std::string()) != "curve") continue;
      std::string model = r.at("model").get<std::string>();
      std::string csv_name = "contract-" + model + ".csv";
      if (std::find(csv_files.begin(), csv_files.end(), csv_name) == csv_files.end()) continue;
      std::vector<CurveCsvRow> rows = read_curve_csv(join_path(ctx.out_dir, csv_name));
      const auto& points = r.at("points");
      if (rows.size() != points.size()) {
        throw ConfigError(csv_name + " row count disagrees with the curve record");
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& p = points[i];
        if (rows[i].model != model || rows[i].n != p.at("n").get<int>() ||
            std::fabs(rows[i].epsilon_n - p.at("epsilon_n").get<double>()) > 1e-12 ||
            std::fabs(rows[i].tail_median - p.at("tail_median").get<double>()) > 1e-12 ||
            std::fabs(rows[i].radius_q90_median - p.at("radius_q90").get<double>()) > 1e-12 ||
            std::fabs(rows[i].min_ess - p.at("min_ess").get<double>()) > 1e-12) {
          throw ConfigError(csv_name + " row " + std::to_string(i + 1) +
                            " disagrees with the curve record");
        }
      }
      summary << csv_name << ": consistent with the curve record\n";
    }
  }
  summary << "total: " << total << " records, " << failures << " fail\n";

  write_text_file(join_path(ctx.out_dir, "summary.txt"), summary.str());
  std::cout << summary.str();
  return failures == 0 ? 0 : 1;
}

}  // namespace ratelab::cli
