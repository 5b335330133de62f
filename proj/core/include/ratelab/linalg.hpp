#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ratelab {

// Row-major square matrix, sized for the small dense problems in this
// library (closed-form divergence inputs, conjugate blocks up to ~64).
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> a;  // n*n entries

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  static DenseMatrix identity(std::size_t dim);
};

// Lower Cholesky factor; throws NotPositiveDefinite if the matrix is not
// symmetric positive definite (symmetry checked to 1e-12 relative).
DenseMatrix cholesky(const DenseMatrix& m);

// Solves L y = b for lower-triangular L.
std::vector<double> forward_solve(const DenseMatrix& lower, std::span<const double> b);

// Solves L^T y = b for lower-triangular L.
std::vector<double> backward_solve(const DenseMatrix& lower, std::span<const double> b);

// x^T M x via the Cholesky factor of M (so the PD check comes for free).
double quadratic_form(const DenseMatrix& m, std::span<const double> x);

// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;
  [[nodiscard]] std::size_t size() const { return diag.size(); }
};

// LDL^T factor of a symmetric positive definite tridiagonal matrix.
struct TridiagLdl {
  std::vector<double> d;  // pivots
  std::vector<double> l;  // subdiagonal of unit lower factor
  [[nodiscard]] double log_det() const;
};

TridiagLdl tridiag_ldl(const Tridiag& m);

// Solves M x = b given the LDL^T factor.
std::vector<double> tridiag_solve(const TridiagLdl& f, std::span<const double> b);

// x^T M x for tridiagonal M (direct, no factorization).
double tridiag_quadform(const Tridiag& m, std::span<const double> x);

// Draws x with precision M (i.e. covariance M^{-1}, mean zero): solves
// R^T x = z where M = R^T R comes from the LDL^T factor and z is iid normal.
std::vector<double> tridiag_precision_sample(const TridiagLdl& f, std::span<const double> z);

}  // namespace ratelab
