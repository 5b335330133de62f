#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ratelab/rng.hpp"
#include "ratelab/step_function.hpp"

namespace ratelab {

// Dominance data for the autoregression on its working lattice |y| <= y_max:
// with drift bounded by m, phi(y - c)/phi(y) lies in [a0, a1] there.
struct ArBoundsCertificate {
  double y_max = 0;
  double a0 = 0;
  double a1 = 0;
  double min_transition_mass = 0;  // worst-case mass the lattice retains
};

// Per-path sufficient statistics for step-drift likelihood ratios: the
// log-ratio is linear-quadratic in the cell coefficients, so a path reduces
// to per-cell counts and sums plus one scalar.
struct ArPathStats {
  std::vector<double> count;  // visits to each cell by x_{i-1}
  std::vector<double> xsum;   // sum of x_i over those visits
  double base = 0;            // log-ratio of the zero step function
};

// First-order autoregression X_i = f(X_{i-1}) + eps_i with standard normal
// innovations and X_0 ~ N(0,1). Candidate drifts are step functions on a
// fixed grid (zero outside the window); the data-generating drift is an
// arbitrary callable bounded by `drift_bound`.
class ArModel {
 public:
  ArModel(std::function<double(double)> truth_drift, double drift_bound, StepGrid grid);

  [[nodiscard]] const StepGrid& grid() const { return grid_; }
  [[nodiscard]] double drift_bound() const { return bound_; }

  // Path (x_0, ..., x_n) under the true drift.
  [[nodiscard]] std::vector<double> sample_truth(int n, Rng rng) const;

  // log p_beta(path) - log p_truth(path); initial laws coincide and cancel.
  [[nodiscard]] double log_likelihood_ratio(std::span<const double> beta,
                                            std::span<const double> path) const;

  // One pass over the path; log_likelihood_ratio(beta, stats) then costs O(k).
  [[nodiscard]] ArPathStats path_stats(std::span<const double> path) const;
  [[nodiscard]] double log_likelihood_ratio(std::span<const double> beta,
                                            const ArPathStats& stats) const;

  // ||f_beta - f_truth|| in L2(nu), nu the standard normal law.
  [[nodiscard]] double l2_to_truth(std::span<const double> beta) const;

  // ||f_b1 - f_b2|| in L2(nu); exact through the coefficient norm.
  [[nodiscard]] double l2_between(std::span<const double> b1, std::span<const double> b2) const;

  // nu-averaged squared modified Hellinger between transition kernels,
  // against the truth: int (2/3)(exp(3 (f_beta - f_truth)^2 / 8) - 1) dnu.
  [[nodiscard]] double transition_hstar2_to_truth(std::span<const double> beta) const;

  // Same functional between two step drifts (closed form per cell).
  [[nodiscard]] double transition_hstar2_between(std::span<const double> b1,
                                                 std::span<const double> b2) const;

  // nu-averaged squared Hellinger between step drifts (closed form per cell).
  [[nodiscard]] double transition_h2_between(std::span<const double> b1,
                                             std::span<const double> b2) const;

  // Lattice bounds; tail_tol is the transition mass the lattice may drop.
  [[nodiscard]] ArBoundsCertificate bounds(double tail_tol = 1e-10) const;

 private:
  void check_amplitude(std::span<const double> beta) const;

  std::function<double(double)> f0_;
  double bound_ = 0;
  StepGrid grid_;
  // Per-cell nu-moments of the true drift: int 1, f0, f0^2 dnu over the cell.
  std::vector<double> m0_, m1_, m2_;
  double exterior_f0_sq_ = 0;  // int_{|x|>a} f0^2 dnu
  // Quadrature nodes per cell for the non-polynomial functionals.
  std::vector<std::vector<double>> node_x_, node_w_, node_f0_;
  std::vector<double> ext_x_, ext_w_, ext_f0_;
};

}  // namespace ratelab
