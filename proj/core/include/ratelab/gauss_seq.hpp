#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ratelab/linalg.hpp"
#include "ratelab/rng.hpp"

namespace ratelab {

// Sequence observation X ~ N(theta, Sigma) in dimension d with precision
// matrix d_scale (I + rho T), T the unit tridiagonal coupling. rho = 0 is
// the independent case Sigma = I/n; |rho| < 1/2 keeps the matrix positive
// definite with eigenvalues inside n [1 - 2 rho, 1 + 2 rho].
class GaussSeqModel {
 public:
  static GaussSeqModel independent(std::vector<double> theta0, double n);
  static GaussSeqModel coupled(std::vector<double> theta0, double n, double rho);

  [[nodiscard]] int dim() const { return static_cast<int>(theta0_.size()); }
  [[nodiscard]] double n() const { return n_; }
  [[nodiscard]] double rho() const { return rho_; }
  [[nodiscard]] const std::vector<double>& theta0() const { return theta0_; }
  [[nodiscard]] const Tridiag& precision() const { return prec_; }

  // log N(x; theta, Sigma); theta shorter than dim is zero padded.
  [[nodiscard]] double log_density(std::span<const double> x,
                                   std::span<const double> theta) const;

  // delta' P delta, the quadratic form entering the Gaussian divergence
  // closed forms.
  [[nodiscard]] double quad_form(std::span<const double> delta) const;

  // Displacement x - theta with zero padding of theta.
  [[nodiscard]] std::vector<double> displacement(std::span<const double> x,
                                                 std::span<const double> theta) const;

  // Envelope of alpha' P alpha / (n |alpha|^2): {1 - 2 rho, 1 + 2 rho}.
  [[nodiscard]] std::pair<double, double> equivalence_bounds() const;

  [[nodiscard]] std::vector<double> sample(std::span<const double> theta, Rng rng) const;
  [[nodiscard]] std::vector<double> sample_truth(Rng rng) const;

 private:
  GaussSeqModel() = default;

  std::vector<double> theta0_;
  double n_ = 0;
  double rho_ = 0;
  Tridiag prec_;
  TridiagLdl ldl_;
};

// Smoothness prior on the first k coordinates: independent N(0, Sigma_k)
// with Sigma_k = diag(1 / (k i^{2 gamma})), coordinates beyond k pinned at
// zero.
struct GaussSeqPrior {
  int k = 0;
  double gamma = 1.0;

  // Prior precision of coordinate i (1-based): k * i^{2 gamma}.
  [[nodiscard]] double precision_at(int i) const;
  [[nodiscard]] std::vector<double> sample(Rng& rng) const;
  // Log density up to an additive constant; theta_k must have k entries.
  [[nodiscard]] double log_weight(std::span<const double> theta_k) const;
};

// Exact Gaussian posterior over the first k coordinates.
struct GaussSeqPosterior {
  std::vector<double> mean;
  Tridiag precision;
  TridiagLdl ldl;

  [[nodiscard]] std::vector<double> sample(Rng& rng) const;
};

GaussSeqPosterior gauss_seq_posterior_exact(const GaussSeqModel& m,
                                            const GaussSeqPrior& prior,
                                            std::span<const double> x);

}  // namespace ratelab
