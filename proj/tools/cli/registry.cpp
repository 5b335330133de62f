#include "cli/registry.hpp"

#include <sstream>
#include <utility>

#include "ratelab/errors.hpp"
#include "ratelab/poisson_reg.hpp"

namespace ratelab::cli {

namespace {

[[noreturn]] void miss(const std::string& kind, const std::string& name,
                       const std::vector<std::string>& known) {
  std::ostringstream msg;
  msg << "unknown " << kind << " '" << name << "'; known:";
  for (const auto& k : known) msg << ' ' << k;
  throw RegistryMiss(msg.str());
}

DiscreteExperiment poisson_partition() {
  PoissonRegModel model;
  model.covariates.resize(64);
  for (int i = 0; i < 64; ++i) {
    model.covariates[static_cast<std::size_t>(i)] = -2.0 + 4.0 * (i + 0.5) / 64.0;
  }
  model.lo = 1.0;
  model.hi = 3.0;
  std::vector<LinkFn> links;
  links.reserve(20);
  for (int t = 0; t < 20; ++t) {
    links.push_back(logistic_link(1.0, 3.0, -1.9 + 0.2 * t));
  }
  return model.experiment(links, 10);
}

}  // namespace

DiscreteExperiment make_experiment(const std::string& name, int n) {
  if (name == "binary5") {
    return DiscreteExperiment(
        {{0.5, 0.5}, {0.35, 0.65}, {0.4, 0.6}, {0.6, 0.4}, {0.65, 0.35}}, n, 0);
  }
  if (name == "binary5-onesided") {
    return DiscreteExperiment(
        {{0.5, 0.5}, {0.6, 0.4}, {0.65, 0.35}, {0.7, 0.3}, {0.75, 0.25}}, n, 0);
  }
  if (name == "ternary7") {
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
  if (name == "poisson-partition") return poisson_partition();
  miss("experiment", name, known_experiments());
}

FiniteMarkovExperiment make_chain(const std::string& name, int n) {
  if (name == "chain2") {
    using ChainParam = FiniteMarkovExperiment::ChainParam;
    std::vector<ChainParam> params;
    params.push_back({{0.5, 0.5}, {{0.6, 0.4}, {0.35, 0.65}}});
    params.push_back({{0.5, 0.5}, {{0.5, 0.5}, {0.45, 0.55}}});
    params.push_back({{0.5, 0.5}, {{0.7, 0.3}, {0.3, 0.7}}});
    params.push_back({{0.5, 0.5}, {{0.55, 0.45}, {0.5, 0.5}}});
    params.push_back({{0.5, 0.5}, {{0.65, 0.35}, {0.25, 0.75}}});
    return FiniteMarkovExperiment(std::move(params), n, 0, {0.5, 0.5});
  }
  miss("chain", name, known_chains());
}

GridPrior make_prior(const std::string& name, int count, int truth) {
  if (count <= 0) throw ConfigError("prior needs a positive parameter count");
  if (name == "uniform") return GridPrior::uniform(count);
  if (name == "off-truth") {
    if (count < 2) throw ConfigError("off-truth prior needs at least two grid points");
    if (truth < 0 || truth >= count) {
      throw ConfigError("off-truth prior: truth index out of range");
    }
    std::vector<double> w(static_cast<std::size_t>(count),
                          1.0 / static_cast<double>(count - 1));
    w[static_cast<std::size_t>(truth)] = 0.0;
    GridPrior prior{std::move(w)};
    prior.validate();
    return prior;
  }
  miss("prior", name, known_priors());
}

std::vector<std::string> known_experiments() {
  return {"binary5", "binary5-onesided", "poisson-partition", "ternary7"};
}

std::vector<std::string> known_chains() { return {"chain2"}; }

std::vector<std::string> known_priors() { return {"off-truth", "uniform"}; }

}  // namespace ratelab::cli
