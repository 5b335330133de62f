#include "ratelab/poisson_reg.hpp"

#include <cmath>

#include "ratelab/divergence.hpp"
#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {

double poisson_coord_pmf(double rate, int x) {
  if (!(rate > 0.0)) throw OutOfRange("poisson_coord_pmf: rate must be positive");
  if (x < 0) throw OutOfRange("poisson_coord_pmf: count must be >= 0");
  return std::exp(-rate + x * std::log(rate) - std::lgamma(x + 1.0));
}

PoissonPmf poisson_pmf(double rate, int trunc) {
  if (!(rate > 0.0)) throw OutOfRange("poisson_pmf: rate must be positive");
  if (trunc < 1) throw OutOfRange("poisson_pmf: trunc must be >= 1");
  PoissonPmf out;
  out.mass.resize(static_cast<std::size_t>(trunc) + 1);
  KahanSum total;
  for (int x = 0; x <= trunc; ++x) {
    double m = poisson_coord_pmf(rate, x);
    out.mass[static_cast<std::size_t>(x)] = m;
    total.add(m);
  }
  out.tail = std::max(0.0, 1.0 - total.value());
  return out;
}

LinkFn logistic_link(double lo, double hi, double center) {
  if (!(hi >= lo && lo > 0.0)) throw OutOfRange("logistic_link: need hi >= lo > 0");
  return [lo, hi, center](double z) { return lo + (hi - lo) / (1.0 + std::exp(center - z)); };
}

DiscreteExperiment PoissonRegModel::experiment(const std::vector<LinkFn>& links,
                                               int truth_index) const {
  if (covariates.empty()) throw DimensionMismatch("experiment: no covariates");
  if (links.empty()) throw DimensionMismatch("experiment: no links");
  std::vector<std::vector<std::vector<double>>> tables(covariates.size());
  for (std::size_t i = 0; i < covariates.size(); ++i) {
    tables[i].resize(links.size());
    for (std::size_t p = 0; p < links.size(); ++p) {
      double rate = links[p](covariates[i]);
      if (!(rate >= lo && rate <= hi)) {
        throw OutOfRange("experiment: link value outside the registered rate bounds");
      }
      tables[i][p] = poisson_pmf(rate, trunc).mass;
    }
  }
  return DiscreteExperiment::inid(std::move(tables), truth_index);
}

double PoissonRegModel::mean_hstar2(const LinkFn& l1, const LinkFn& l2) const {
  if (covariates.empty()) throw DimensionMismatch("mean_hstar2: no covariates");
  KahanSum s;
  for (double z : covariates) {
    PoissonPmf f = poisson_pmf(l1(z), trunc);
    PoissonPmf g = poisson_pmf(l2(z), trunc);
    double h = hellinger_star(f.mass, g.mass);
    s.add(h * h);
  }
  return s.value() / static_cast<double>(covariates.size());
}

double PoissonRegModel::link_l2(const LinkFn& l1, const LinkFn& l2) const {
  if (covariates.empty()) throw DimensionMismatch("link_l2: no covariates");
  KahanSum s;
  for (double z : covariates) {
    double d = l1(z) - l2(z);
    s.add(d * d);
  }
  return std::sqrt(s.value() / static_cast<double>(covariates.size()));
}

}  // namespace ratelab
