#include "ratelab/gauss_seq.hpp"

#include <cmath>

#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {

GaussSeqModel GaussSeqModel::independent(std::vector<double> theta0, double n) {
  return coupled(std::move(theta0), n, 0.0);
}

GaussSeqModel GaussSeqModel::coupled(std::vector<double> theta0, double n, double rho) {
  if (theta0.empty()) throw DimensionMismatch("GaussSeqModel: empty mean sequence");
  if (!(n > 0.0)) throw OutOfRange("GaussSeqModel: n must be positive");
  if (!(std::abs(rho) < 0.5)) throw NotPositiveDefinite("GaussSeqModel: |rho| must be < 1/2");
  GaussSeqModel m;
  m.theta0_ = std::move(theta0);
  m.n_ = n;
  m.rho_ = rho;
  std::size_t d = m.theta0_.size();
  m.prec_.diag.assign(d, n);
  m.prec_.off.assign(d - 1, n * rho);
  m.ldl_ = tridiag_ldl(m.prec_);
  return m;
}

std::vector<double> GaussSeqModel::displacement(std::span<const double> x,
                                                std::span<const double> theta) const {
  if (static_cast<int>(x.size()) != dim()) throw DimensionMismatch("displacement: x size");
  if (static_cast<int>(theta.size()) > dim()) throw DimensionMismatch("displacement: theta size");
  std::vector<double> delta(x.begin(), x.end());
  for (std::size_t i = 0; i < theta.size(); ++i) delta[i] -= theta[i];
  return delta;
}

double GaussSeqModel::log_density(std::span<const double> x,
                                  std::span<const double> theta) const {
  std::vector<double> delta = displacement(x, theta);
  double q = tridiag_quadform(prec_, delta);
  return 0.5 * (ldl_.log_det() - dim() * std::log(2.0 * M_PI) - q);
}

double GaussSeqModel::quad_form(std::span<const double> delta) const {
  if (static_cast<int>(delta.size()) != dim()) throw DimensionMismatch("quad_form: size");
  return tridiag_quadform(prec_, delta);
}

std::pair<double, double> GaussSeqModel::equivalence_bounds() const {
  return {1.0 - 2.0 * std::abs(rho_), 1.0 + 2.0 * std::abs(rho_)};
}

std::vector<double> GaussSeqModel::sample(std::span<const double> theta, Rng rng) const {
  if (static_cast<int>(theta.size()) > dim()) throw DimensionMismatch("sample: theta size");
  std::vector<double> z(static_cast<std::size_t>(dim()));
  for (double& v : z) v = rng.normal();
  std::vector<double> x = tridiag_precision_sample(ldl_, z);
  for (std::size_t i = 0; i < theta.size(); ++i) x[i] += theta[i];
  return x;
}

std::vector<double> GaussSeqModel::sample_truth(Rng rng) const {
  return sample(theta0_, rng);
}

double GaussSeqPrior::precision_at(int i) const {
  if (i < 1 || i > k) throw OutOfRange("GaussSeqPrior: coordinate index");
  return k * std::pow(static_cast<double>(i), 2.0 * gamma);
}

std::vector<double> GaussSeqPrior::sample(Rng& rng) const {
  if (k < 1) throw OutOfRange("GaussSeqPrior: k must be >= 1");
  std::vector<double> theta(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    theta[static_cast<std::size_t>(i - 1)] = rng.normal() / std::sqrt(precision_at(i));
  }
  return theta;
}

double GaussSeqPrior::log_weight(std::span<const double> theta_k) const {
  if (static_cast<int>(theta_k.size()) != k) throw DimensionMismatch("log_weight: size");
  KahanSum s;
  for (int i = 1; i <= k; ++i) {
    double t = theta_k[static_cast<std::size_t>(i - 1)];
    s.add(-0.5 * t * t * precision_at(i));
  }
  return s.value();
}

std::vector<double> GaussSeqPosterior::sample(Rng& rng) const {
  std::vector<double> z(mean.size());
  for (double& v : z) v = rng.normal();
  std::vector<double> draw = tridiag_precision_sample(ldl, z);
  for (std::size_t i = 0; i < draw.size(); ++i) draw[i] += mean[i];
  return draw;
}

GaussSeqPosterior gauss_seq_posterior_exact(const GaussSeqModel& m,
                                            const GaussSeqPrior& prior,
                                            std::span<const double> x) {
  if (prior.k < 1 || prior.k > m.dim()) throw OutOfRange("posterior: k out of range");
  if (static_cast<int>(x.size()) != m.dim()) throw DimensionMismatch("posterior: x size");
  std::size_t k = static_cast<std::size_t>(prior.k);
  const Tridiag& p = m.precision();

  // (P x) restricted to the prior's support block.
  std::vector<double> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    double v = p.diag[i] * x[i];
    if (i > 0) v += p.off[i - 1] * x[i - 1];
    if (i + 1 < x.size()) v += p.off[i] * x[i + 1];
    rhs[i] = v;
  }

  GaussSeqPosterior post;
  post.precision.diag.resize(k);
  post.precision.off.assign(p.off.begin(), p.off.begin() + static_cast<long>(k) - 1);
  for (std::size_t i = 0; i < k; ++i) {
    post.precision.diag[i] = p.diag[i] + prior.precision_at(static_cast<int>(i) + 1);
  }
  post.ldl = tridiag_ldl(post.precision);
  post.mean = tridiag_solve(post.ldl, rhs);
  return post;
}

}  // namespace ratelab
