#include "ratelab/step_function.hpp"

#include <cmath>

#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"
#include "ratelab/rng.hpp"

namespace ratelab {

StepGrid::StepGrid(double window, int cells) : a(window), k(cells) {
  if (!(window > 0.0)) throw OutOfRange("StepGrid: window must be positive");
  if (cells < 1) throw OutOfRange("StepGrid: need at least one cell");
  nu_mass.resize(static_cast<std::size_t>(cells));
  for (int j = 0; j < cells; ++j) {
    nu_mass[static_cast<std::size_t>(j)] =
        normal_cdf(left_edge(j) + cell_width()) - normal_cdf(left_edge(j));
  }
}

int StepGrid::cell_of(double x) const {
  if (x < -a || x >= a) return -1;
  int j = static_cast<int>((x + a) / cell_width());
  return j >= k ? k - 1 : j;
}

double step_eval(const StepGrid& grid, std::span<const double> beta, double x) {
  if (static_cast<int>(beta.size()) != grid.k) throw DimensionMismatch("step_eval: beta size");
  int j = grid.cell_of(x);
  return j < 0 ? 0.0 : beta[static_cast<std::size_t>(j)];
}

double step_coeff_norm(const StepGrid& grid, std::span<const double> b1,
                       std::span<const double> b2) {
  if (b1.size() != b2.size() || static_cast<int>(b1.size()) != grid.k) {
    throw DimensionMismatch("step_coeff_norm: coefficient sizes");
  }
  KahanSum s;
  for (int j = 0; j < grid.k; ++j) {
    double d = b1[static_cast<std::size_t>(j)] - b2[static_cast<std::size_t>(j)];
    s.add(d * d * grid.nu_mass[static_cast<std::size_t>(j)]);
  }
  return std::sqrt(s.value());
}

StepDesign ar_design(double eps, double lipschitz, double b1,
                     const std::function<double(double)>& target) {
  if (!(eps > 0.0 && eps < 1.0)) throw OutOfRange("ar_design: eps must be in (0,1)");
  if (!(lipschitz > 0.0) || !(b1 > 0.0)) throw OutOfRange("ar_design: constants must be positive");
  StepDesign d;
  d.a_n = 2.0 * std::sqrt(std::log(1.0 / eps));
  d.k_n = static_cast<int>(std::floor(3.0 * lipschitz * d.a_n / (b1 * eps))) + 1;
  StepGrid grid(d.a_n, d.k_n);
  d.beta0.resize(static_cast<std::size_t>(d.k_n));
  for (int j = 0; j < d.k_n; ++j) {
    d.beta0[static_cast<std::size_t>(j)] = target(grid.midpoint(j));
  }
  return d;
}

QuadratureRule gauss_legendre(int points) {
  if (points < 2) throw OutOfRange("gauss_legendre: need at least 2 points");
  QuadratureRule r;
  r.nodes.resize(static_cast<std::size_t>(points));
  r.weights.resize(static_cast<std::size_t>(points));
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration from the Chebyshev-like initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    r.nodes[static_cast<std::size_t>(i)] = -x;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

double integrate(const QuadratureRule& rule, int panels, double lo, double hi,
                 const std::function<double(double)>& fn) {
  if (panels < 1) throw OutOfRange("integrate: need at least one panel");
  KahanSum s;
  double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    double a = lo + p * width;
    double half = 0.5 * width;
    double mid = a + half;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      s.add(rule.weights[q] * half * fn(mid + half * rule.nodes[q]));
    }
  }
  return s.value();
}

}  // namespace ratelab
