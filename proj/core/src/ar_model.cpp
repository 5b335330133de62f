#include "ratelab/ar_model.hpp"

#include <cmath>

#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {
namespace {

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

}  // namespace

ArModel::ArModel(std::function<double(double)> truth_drift, double drift_bound, StepGrid grid)
    : f0_(std::move(truth_drift)), bound_(drift_bound), grid_(std::move(grid)) {
  if (!(bound_ > 0.0)) throw OutOfRange("ArModel: drift bound must be positive");
  const int k = grid_.k;
  QuadratureRule rule = gauss_legendre(24);
  m0_.resize(k);
  m1_.resize(k);
  m2_.resize(k);
  node_x_.resize(k);
  node_w_.resize(k);
  node_f0_.resize(k);
  const int panels = 4;
  for (int j = 0; j < k; ++j) {
    double lo = grid_.left_edge(j);
    double hi = lo + grid_.cell_width();
    double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      double mid = lo + (p + 0.5) * width;
      double half = 0.5 * width;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        double x = mid + half * rule.nodes[q];
        node_x_[j].push_back(x);
        node_w_[j].push_back(rule.weights[q] * half * phi(x));
        node_f0_[j].push_back(f0_(x));
      }
    }
    KahanSum s0, s1, s2;
    for (std::size_t q = 0; q < node_x_[j].size(); ++q) {
      double w = node_w_[j][q];
      double f = node_f0_[j][q];
      s0.add(w);
      s1.add(w * f);
      s2.add(w * f * f);
    }
    m0_[j] = s0.value();
    m1_[j] = s1.value();
    m2_[j] = s2.value();
  }
  // Exterior nodes out to where the normal weight is negligible.
  double far = grid_.a + 12.0;
  for (int side = 0; side < 2; ++side) {
    double lo = side == 0 ? -far : grid_.a;
    double hi = side == 0 ? -grid_.a : far;
    const int ext_panels = 24;
    double width = (hi - lo) / ext_panels;
    for (int p = 0; p < ext_panels; ++p) {
      double mid = lo + (p + 0.5) * width;
      double half = 0.5 * width;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        double x = mid + half * rule.nodes[q];
        ext_x_.push_back(x);
        ext_w_.push_back(rule.weights[q] * half * phi(x));
        ext_f0_.push_back(f0_(x));
      }
    }
  }
  KahanSum ext;
  for (std::size_t q = 0; q < ext_x_.size(); ++q) {
    ext.add(ext_w_[q] * ext_f0_[q] * ext_f0_[q]);
  }
  exterior_f0_sq_ = ext.value();

  double sup = 0.0;
  for (int j = 0; j < k; ++j) {
    for (double f : node_f0_[j]) sup = std::max(sup, std::abs(f));
  }
  for (double f : ext_f0_) sup = std::max(sup, std::abs(f));
  if (sup > bound_ * (1.0 + 1e-12)) {
    throw AmplitudeExceeded("ArModel: true drift exceeds the amplitude bound");
  }
}

void ArModel::check_amplitude(std::span<const double> beta) const {
  for (double b : beta) {
    if (std::abs(b) > bound_ * (1.0 + 1e-12)) {
      throw AmplitudeExceeded("ArModel: step coefficient exceeds the amplitude bound");
    }
  }
}

std::vector<double> ArModel::sample_truth(int n, Rng rng) const {
  if (n <= 0) throw OutOfRange("sample_truth: n must be positive");
  std::vector<double> path(static_cast<std::size_t>(n) + 1);
  path[0] = rng.normal();
  for (int i = 1; i <= n; ++i) {
    path[static_cast<std::size_t>(i)] = f0_(path[static_cast<std::size_t>(i - 1)]) + rng.normal();
  }
  return path;
}

double ArModel::log_likelihood_ratio(std::span<const double> beta,
                                     std::span<const double> path) const {
  if (path.size() < 2) throw DimensionMismatch("log_likelihood_ratio: path too short");
  if (static_cast<int>(beta.size()) != grid_.k) {
    throw DimensionMismatch("log_likelihood_ratio: beta size");
  }
  check_amplitude(beta);
  KahanSum s;
  for (std::size_t i = 1; i < path.size(); ++i) {
    double prev = path[i - 1];
    double cand = path[i] - step_eval(grid_, beta, prev);
    double truth = path[i] - f0_(prev);
    s.add(0.5 * (truth * truth - cand * cand));
  }
  return s.value();
}

ArPathStats ArModel::path_stats(std::span<const double> path) const {
  if (path.size() < 2) throw DimensionMismatch("path_stats: path too short");
  ArPathStats st;
  st.count.assign(static_cast<std::size_t>(grid_.k), 0.0);
  st.xsum.assign(static_cast<std::size_t>(grid_.k), 0.0);
  KahanSum base;
  for (std::size_t i = 1; i < path.size(); ++i) {
    double prev = path[i - 1];
    double truth = path[i] - f0_(prev);
    base.add(0.5 * (truth * truth - path[i] * path[i]));
    int cell = grid_.cell_of(prev);
    if (cell >= 0) {
      st.count[static_cast<std::size_t>(cell)] += 1.0;
      st.xsum[static_cast<std::size_t>(cell)] += path[i];
    }
  }
  st.base = base.value();
  return st;
}

double ArModel::log_likelihood_ratio(std::span<const double> beta,
                                     const ArPathStats& stats) const {
  if (static_cast<int>(beta.size()) != grid_.k ||
      stats.count.size() != beta.size()) {
    throw DimensionMismatch("log_likelihood_ratio: beta/stats size");
  }
  check_amplitude(beta);
  KahanSum s;
  s.add(stats.base);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    s.add(beta[j] * stats.xsum[j] - 0.5 * beta[j] * beta[j] * stats.count[j]);
  }
  return s.value();
}

double ArModel::l2_to_truth(std::span<const double> beta) const {
  if (static_cast<int>(beta.size()) != grid_.k) throw DimensionMismatch("l2_to_truth: beta size");
  KahanSum s;
  for (int j = 0; j < grid_.k; ++j) {
    double b = beta[static_cast<std::size_t>(j)];
    s.add(b * b * m0_[j] - 2.0 * b * m1_[j] + m2_[j]);
  }
  s.add(exterior_f0_sq_);
  return std::sqrt(std::max(0.0, s.value()));
}

double ArModel::l2_between(std::span<const double> b1, std::span<const double> b2) const {
  return step_coeff_norm(grid_, b1, b2);
}

double ArModel::transition_hstar2_to_truth(std::span<const double> beta) const {
  if (static_cast<int>(beta.size()) != grid_.k) {
    throw DimensionMismatch("transition_hstar2_to_truth: beta size");
  }
  KahanSum s;
  for (int j = 0; j < grid_.k; ++j) {
    double b = beta[static_cast<std::size_t>(j)];
    for (std::size_t q = 0; q < node_x_[j].size(); ++q) {
      double diff = b - node_f0_[j][q];
      s.add(node_w_[j][q] * (2.0 / 3.0) * std::expm1(3.0 * diff * diff / 8.0));
    }
  }
  for (std::size_t q = 0; q < ext_x_.size(); ++q) {
    double diff = ext_f0_[q];
    s.add(ext_w_[q] * (2.0 / 3.0) * std::expm1(3.0 * diff * diff / 8.0));
  }
  return s.value();
}

double ArModel::transition_hstar2_between(std::span<const double> b1,
                                          std::span<const double> b2) const {
  if (b1.size() != b2.size() || static_cast<int>(b1.size()) != grid_.k) {
    throw DimensionMismatch("transition_hstar2_between: beta sizes");
  }
  KahanSum s;
  for (int j = 0; j < grid_.k; ++j) {
    double diff = b1[static_cast<std::size_t>(j)] - b2[static_cast<std::size_t>(j)];
    s.add(m0_[j] * (2.0 / 3.0) * std::expm1(3.0 * diff * diff / 8.0));
  }
  return s.value();
}

double ArModel::transition_h2_between(std::span<const double> b1,
                                      std::span<const double> b2) const {
  if (b1.size() != b2.size() || static_cast<int>(b1.size()) != grid_.k) {
    throw DimensionMismatch("transition_h2_between: beta sizes");
  }
  KahanSum s;
  for (int j = 0; j < grid_.k; ++j) {
    double diff = b1[static_cast<std::size_t>(j)] - b2[static_cast<std::size_t>(j)];
    s.add(m0_[j] * -2.0 * std::expm1(-diff * diff / 8.0));
  }
  return s.value();
}

ArBoundsCertificate ArModel::bounds(double tail_tol) const {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw OutOfRange("bounds: tail_tol in (0,1)");
  ArBoundsCertificate c;
  // Worst case drift +-bound: keep Phi-bar(y_max - bound) at half the budget.
  double z = -normal_quantile(0.5 * tail_tol);
  c.y_max = bound_ + z;
  c.a0 = std::exp(-0.5 * bound_ * bound_ - bound_ * c.y_max);
  c.a1 = std::exp(-0.5 * bound_ * bound_ + bound_ * c.y_max);
  c.min_transition_mass = normal_cdf(c.y_max - bound_) - normal_cdf(-c.y_max - bound_);
  if (c.min_transition_mass < 1.0 - tail_tol) {
    throw OutOfRange("bounds: lattice loses more transition mass than tail_tol");
  }
  return c;
}

}  // namespace ratelab
