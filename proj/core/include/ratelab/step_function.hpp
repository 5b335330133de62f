#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ratelab {

// Equal-width cells partitioning the window [-a, a) into k pieces, with
// standard-normal reference masses nu(I_j) = Phi(r_j) - Phi(l_j).
struct StepGrid {
  double a = 0;
  int k = 0;
  std::vector<double> nu_mass;  // k entries

  StepGrid() = default;
  StepGrid(double window, int cells);

  [[nodiscard]] double cell_width() const { return 2.0 * a / k; }
  [[nodiscard]] double left_edge(int j) const { return -a + j * cell_width(); }
  [[nodiscard]] double midpoint(int j) const { return -a + (2.0 * j + 1.0) * a / k; }
  // Cell index of x, or -1 outside the window.
  [[nodiscard]] int cell_of(double x) const;
};

// Step function sum_j beta_j 1_{I_j}(x), zero outside the window.
double step_eval(const StepGrid& grid, std::span<const double> beta, double x);

// Coefficient norm matching the nu-weighted L2 norm of the step function:
// ||beta||^2 = sum_j beta_j^2 nu(I_j), so that
// ||f_{b1} - f_{b2}||_{L2(nu)} = ||b1 - b2|| exactly for steps on one grid.
double step_coeff_norm(const StepGrid& grid, std::span<const double> b1, std::span<const double> b2);

// Window and cell-count schedule for approximating a Lipschitz target:
//   a_n = 2 sqrt(log(1/eps)), k_n = floor(3 L a_n / (b1 eps)) + 1,
// with coefficients read off the target at cell midpoints, which is what
// delivers the sup-error guarantee lipschitz * a_n / k_n on the window.
struct StepDesign {
  double a_n = 0;
  int k_n = 0;
  std::vector<double> beta0;
};
StepDesign ar_design(double eps, double lipschitz, double b1,
                     const std::function<double(double)>& target);

// Gauss-Legendre nodes/weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int points);

// integral of fn over [lo, hi] with the rule mapped onto `panels` pieces.
double integrate(const QuadratureRule& rule, int panels, double lo, double hi,
                 const std::function<double(double)>& fn);

}  // namespace ratelab
