#include "ratelab/divergence.hpp"

#include <cmath>
#include <limits>

#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_grids(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) throw GridMismatch("densities on different outcome grids");
  if (f.empty()) throw GridMismatch("empty outcome grid");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] < 0.0 || g[i] < 0.0) throw OutOfRange("negative density value");
  }
}

}  // namespace

double hellinger(std::span<const double> f, std::span<const double> g) {
  check_grids(f, g);
  KahanSum s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double d = std::sqrt(f[i]) - std::sqrt(g[i]);
    s.add(d * d);
  }
  return std::sqrt(s.value());
}

double hellinger_star(std::span<const double> f, std::span<const double> g) {
  check_grids(f, g);
  KahanSum s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0 && g[i] == 0.0) continue;
    if (g[i] == 0.0) return kInf;
    double d = std::sqrt(f[i]) - std::sqrt(g[i]);
    s.add(d * d * ((2.0 / 3.0) * std::sqrt(f[i] / g[i]) + 1.0 / 3.0));
  }
  return std::sqrt(s.value());
}

double inverse_root_moment(std::span<const double> f, std::span<const double> g) {
  check_grids(f, g);
  KahanSum s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    if (g[i] == 0.0) return kInf;
    s.add(f[i] * std::sqrt(f[i] / g[i]));
  }
  return s.value();
}

double affinity(std::span<const double> f, std::span<const double> g) {
  check_grids(f, g);
  KahanSum s;
  for (std::size_t i = 0; i < f.size(); ++i) s.add(std::sqrt(f[i] * g[i]));
  return s.value();
}

double sup_ratio(std::span<const double> f, std::span<const double> g) {
  check_grids(f, g);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    if (g[i] == 0.0) return kInf;
    m = std::max(m, f[i] / g[i]);
  }
  return m;
}

double kl_divergence(std::span<const double> f, std::span<const double> g) {
  check_grids(f, g);
  KahanSum s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    if (g[i] == 0.0) return kInf;
    s.add(f[i] * std::log(f[i] / g[i]));
  }
  return s.value();
}

DivergenceReport divergence_report(std::span<const double> f, std::span<const double> g,
                                   std::span<const int> ks) {
  DivergenceReport rep;
  rep.hellinger = hellinger(f, g);
  rep.hellinger_star = hellinger_star(f, g);
  rep.kl = kl_divergence(f, g);
  rep.sup_ratio = sup_ratio(f, g);
  for (int k : ks) {
    if (k < 1) throw OutOfRange("divergence_report: moment order must be >= 1");
    if (rep.kl == kInf) {
      rep.v_raw[k] = kInf;
      rep.v_centered[k] = kInf;
      continue;
    }
    KahanSum raw;
    KahanSum centered;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] == 0.0) continue;
      double lr = std::log(f[i] / g[i]);
      raw.add(f[i] * std::pow(std::fabs(lr), k));
      centered.add(f[i] * std::pow(std::fabs(lr - rep.kl), k));
    }
    rep.v_raw[k] = raw.value();
    rep.v_centered[k] = centered.value();
  }
  return rep;
}

double avg_hellinger(std::span<const DensityPair> coords) {
  if (coords.empty()) throw DimensionMismatch("avg_hellinger: no coordinates");
  KahanSum s;
  for (const auto& c : coords) {
    double h = hellinger(c.f, c.g);
    s.add(h * h);
  }
  return std::sqrt(s.value() / static_cast<double>(coords.size()));
}

ProductAffinity product_affinity_check(std::span<const DensityPair> coords,
                                       std::size_t max_states) {
  if (coords.empty()) throw DimensionMismatch("product_affinity_check: no coordinates");
  std::size_t states = 1;
  for (const auto& c : coords) {
    check_grids(c.f, c.g);
    if (c.f.size() > max_states / states) {
      throw StateSpaceTooLarge("product_affinity_check: state budget exceeded");
    }
    states *= c.f.size();
  }

  ProductAffinity out;
  out.states = states;

  // Factorized sides from per-coordinate functionals.
  double log_aff = 0.0;
  double log_irm = 0.0;
  bool aff_zero = false;
  for (const auto& c : coords) {
    double h = hellinger(c.f, c.g);
    double a = 1.0 - 0.5 * h * h;
    if (a <= 0.0) {
      aff_zero = true;
    } else {
      log_aff += std::log(a);
    }
    double irm = inverse_root_moment(c.f, c.g);
    if (irm == kInf) {
      log_irm = kInf;
    } else if (log_irm != kInf) {
      log_irm += std::log(irm);
    }
  }
  out.h2_factorized = aff_zero ? 2.0 : 2.0 * -std::expm1(log_aff);
  out.hstar2_factorized = log_irm == kInf ? kInf : (2.0 / 3.0) * std::expm1(log_irm);

  // Enumerated sides over the tensor grid, mixed-radix odometer.
  const std::size_t dim = coords.size();
  std::vector<std::size_t> idx(dim, 0);
  KahanSum aff_sum;
  KahanSum irm_sum;
  bool irm_inf = false;
  for (std::size_t s = 0; s < states; ++s) {
    double pf = 1.0;
    double pg = 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      pf *= coords[d].f[idx[d]];
      pg *= coords[d].g[idx[d]];
    }
    aff_sum.add(std::sqrt(pf * pg));
    if (pf > 0.0) {
      if (pg == 0.0) {
        irm_inf = true;
      } else {
        irm_sum.add(pf * std::sqrt(pf / pg));
      }
    }
    for (std::size_t d = dim; d-- > 0;) {
      if (++idx[d] < coords[d].f.size()) break;
      idx[d] = 0;
    }
  }
  out.h2_enumerated = 2.0 - 2.0 * aff_sum.value();
  out.hstar2_enumerated = irm_inf ? kInf : (2.0 / 3.0) * (irm_sum.value() - 1.0);
  return out;
}

GaussianDivergence gaussian_closed_forms(std::span<const double> delta,
                                         const DenseMatrix& precision) {
  if (delta.size() != precision.n) throw DimensionMismatch("gaussian_closed_forms: sizes");
  GaussianDivergence d;
  d.q = quadratic_form(precision, delta);
  d.h2 = -2.0 * std::expm1(-d.q / 8.0);
  d.hstar2 = (2.0 / 3.0) * std::expm1(3.0 * d.q / 8.0);
  return d;
}

PoissonHstar poisson_hstar_bound(double a, double b, double lo, double hi, int trunc) {
  if (!(lo > 0.0) || !(hi >= lo)) throw OutOfRange("poisson_hstar_bound: need 0 < lo <= hi");
  if (a < lo || a > hi || b < lo || b > hi) {
    throw OutOfRange("poisson_hstar_bound: rates must lie in [lo, hi]");
  }
  if (trunc < 1) throw OutOfRange("poisson_hstar_bound: trunc must be >= 1");
  KahanSum s;
  double last_term = 0.0;
  for (int x = 0; x < trunc; ++x) {
    double lg = std::lgamma(static_cast<double>(x) + 1.0);
    double sa = std::exp(-a / 2.0 + 0.5 * x * std::log(a) - 0.5 * lg);
    double sb = std::exp(-b / 2.0 + 0.5 * x * std::log(b) - 0.5 * lg);
    double diff = sa - sb;
    double weight = (2.0 / 3.0) * std::exp((b - a) / 2.0 + 0.5 * x * std::log(a / b)) + 1.0 / 3.0;
    last_term = diff * diff * weight;
    s.add(last_term);
  }
  // Terms beyond x are bounded by a geometric decay with ratio
  // hi * sqrt(hi/lo) / (x+1); valid once that ratio is below 1/2.
  double rho = hi * std::sqrt(hi / lo) / (trunc + 1.0);
  if (rho >= 0.5) {
    throw OutOfRange("poisson_hstar_bound: trunc too small for a tail bound at this hi/lo");
  }
  PoissonHstar out;
  out.value = s.value();
  out.tail_bound = last_term * rho / (1.0 - rho);
  return out;
}

double poisson_hstar_constant(double lo, double hi, int trunc) {
  if (!(lo > 0.0) || !(hi >= lo)) throw OutOfRange("poisson_hstar_constant: need 0 < lo <= hi");
  if (trunc < 1) throw OutOfRange("poisson_hstar_constant: trunc must be >= 1");
  // Terms are hi^x (1 + x/hi)^2 (hi/lo)^{x/2} / x!, assembled in log space.
  KahanSum s;
  for (int x = 0; x < trunc; ++x) {
    double logt = x * std::log(hi) + 0.5 * x * std::log(hi / lo) -
                  std::lgamma(static_cast<double>(x) + 1.0);
    double poly = 1.0 + static_cast<double>(x) / hi;
    s.add(std::exp(logt) * poly * poly);
  }
  return std::exp((hi - 3.0 * lo) / 2.0) * s.value();
}

}  // namespace ratelab
