#include "ratelab/linalg.hpp"

#include <cmath>

#include "ratelab/errors.hpp"

namespace ratelab {

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseMatrix cholesky(const DenseMatrix& m) {
  const std::size_t n = m.n;
  if (m.a.size() != n * n) throw DimensionMismatch("cholesky: storage size");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double scale = std::max({std::fabs(m.at(i, j)), std::fabs(m.at(j, i)), 1.0});
      if (std::fabs(m.at(i, j) - m.at(j, i)) > 1e-12 * scale) {
        throw NotPositiveDefinite("cholesky: matrix not symmetric");
      }
    }
  }
  DenseMatrix lower(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m.at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= lower.at(j, k) * lower.at(j, k);
    if (!(d > 0.0)) throw NotPositiveDefinite("cholesky: nonpositive pivot");
    lower.at(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower.at(i, k) * lower.at(j, k);
      lower.at(i, j) = s / lower.at(j, j);
    }
  }
  return lower;
}

std::vector<double> forward_solve(const DenseMatrix& lower, std::span<const double> b) {
  const std::size_t n = lower.n;
  if (b.size() != n) throw DimensionMismatch("forward_solve: size");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower.at(i, k) * y[k];
    y[i] = s / lower.at(i, i);
  }
  return y;
}

std::vector<double> backward_solve(const DenseMatrix& lower, std::span<const double> b) {
  const std::size_t n = lower.n;
  if (b.size() != n) throw DimensionMismatch("backward_solve: size");
  std::vector<double> y(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower.at(k, ii) * y[k];
    y[ii] = s / lower.at(ii, ii);
  }
  return y;
}

double quadratic_form(const DenseMatrix& m, std::span<const double> x) {
  DenseMatrix lower = cholesky(m);
  // x^T M x = ||L^T x||^2.
  const std::size_t n = m.n;
  if (x.size() != n) throw DimensionMismatch("quadratic_form: size");
  double q = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = j; i < n; ++i) s += lower.at(i, j) * x[i];
    q += s * s;
  }
  return q;
}

double TridiagLdl::log_det() const {
  double s = 0.0;
  for (double p : d) s += std::log(p);
  return s;
}

TridiagLdl tridiag_ldl(const Tridiag& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DimensionMismatch("tridiag_ldl: empty");
  if (m.off.size() + 1 != n) throw DimensionMismatch("tridiag_ldl: off size");
  TridiagLdl f;
  f.d.resize(n);
  f.l.assign(n == 0 ? 0 : n - 1, 0.0);
  f.d[0] = m.diag[0];
  if (!(f.d[0] > 0.0)) throw NotPositiveDefinite("tridiag_ldl: nonpositive pivot");
  for (std::size_t i = 1; i < n; ++i) {
    f.l[i - 1] = m.off[i - 1] / f.d[i - 1];
    f.d[i] = m.diag[i] - f.l[i - 1] * m.off[i - 1];
    if (!(f.d[i] > 0.0)) throw NotPositiveDefinite("tridiag_ldl: nonpositive pivot");
  }
  return f;
}

std::vector<double> tridiag_solve(const TridiagLdl& f, std::span<const double> b) {
  const std::size_t n = f.d.size();
  if (b.size() != n) throw DimensionMismatch("tridiag_solve: size");
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 1; i < n; ++i) y[i] -= f.l[i - 1] * y[i - 1];
  for (std::size_t i = 0; i < n; ++i) y[i] /= f.d[i];
  for (std::size_t ii = n - 1; ii-- > 0;) y[ii] -= f.l[ii] * y[ii + 1];
  return y;
}

double tridiag_quadform(const Tridiag& m, std::span<const double> x) {
  const std::size_t n = m.size();
  if (x.size() != n) throw DimensionMismatch("tridiag_quadform: size");
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) q += m.diag[i] * x[i] * x[i];
  for (std::size_t i = 0; i + 1 < n; ++i) q += 2.0 * m.off[i] * x[i] * x[i + 1];
  return q;
}

std::vector<double> tridiag_precision_sample(const TridiagLdl& f, std::span<const double> z) {
  // Precision M = L D L^T = R^T R with R = D^{1/2} L^T upper bidiagonal;
  // solving R x = z gives cov(x) = M^{-1}.
  const std::size_t n = f.d.size();
  if (z.size() != n) throw DimensionMismatch("tridiag_precision_sample: size");
  std::vector<double> x(n);
  x[n - 1] = z[n - 1] / std::sqrt(f.d[n - 1]);
  for (std::size_t ii = n - 1; ii-- > 0;) {
    x[ii] = z[ii] / std::sqrt(f.d[ii]) - f.l[ii] * x[ii + 1];
  }
  return x;
}

}  // namespace ratelab
