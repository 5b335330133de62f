#include <doctest.h>

#include <cmath>
#include <vector>

#include "ratelab/errors.hpp"
#include "ratelab/linalg.hpp"

using namespace ratelab;

namespace {

DenseMatrix spd2() {
  DenseMatrix m(2);
  m.at(0, 0) = 4;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 3;
  return m;
}

}  // namespace

TEST_CASE("cholesky of a 2x2 spd matrix") {
  DenseMatrix l = cholesky(spd2());
  CHECK(l.at(0, 0) == doctest::Approx(2.0));
  CHECK(l.at(1, 0) == doctest::Approx(1.0));
  CHECK(l.at(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(l.at(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("cholesky rejects an indefinite matrix") {
  DenseMatrix m(2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 2;
  m.at(1, 1) = 1;
  CHECK_THROWS_AS((void)cholesky(m), NotPositiveDefinite);
}

TEST_CASE("triangular solves invert the factor") {
  DenseMatrix l = cholesky(spd2());
  std::vector<double> b{6.0, 5.0};
  std::vector<double> y = forward_solve(l, b);
  std::vector<double> x = backward_solve(l, y);
  // x solves M x = b for M = spd2.
  CHECK(4 * x[0] + 2 * x[1] == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(2 * x[0] + 3 * x[1] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("quadratic form matches manual expansion") {
  std::vector<double> x{1.0, -2.0};
  // x' M x = 4*1 + 2*2*(1)(-2) + 3*4 = 4 - 8 + 12 = 8.
  CHECK(quadratic_form(spd2(), x) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("tridiagonal ldl reproduces determinant, solve and quadform") {
  Tridiag t;
  t.diag = {2.0, 2.0, 2.0};
  t.off = {-1.0, -1.0};
  TridiagLdl f = tridiag_ldl(t);
  // det = 2*(4-1) - (-1)*(-1)*2 = 4.
  CHECK(f.log_det() == doctest::Approx(std::log(4.0)).epsilon(1e-13));

  std::vector<double> b{1.0, 0.0, 1.0};
  std::vector<double> x = tridiag_solve(f, b);
  CHECK(2 * x[0] - x[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(-x[0] + 2 * x[1] - x[2] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(-x[1] + 2 * x[2] == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> v{1.0, 2.0, 3.0};
  // v' T v = 2(1+4+9) - 2(1*2) - 2(2*3) = 28 - 4 - 12 = 12.
  CHECK(tridiag_quadform(t, v) == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("tridiagonal ldl refuses indefinite input") {
  Tridiag t;
  t.diag = {1.0, 0.1};
  t.off = {2.0};
  CHECK_THROWS_AS((void)tridiag_ldl(t), NotPositiveDefinite);
}

TEST_CASE("precision sampling maps white noise through the factor") {
  Tridiag t;
  t.diag = {3.0, 3.0};
  t.off = {1.0};
  TridiagLdl f = tridiag_ldl(t);
  // M x = z-independent identity: x built from z has precision M, so for
  // z = 0 the draw must be 0, and the map must be linear.
  std::vector<double> zero{0.0, 0.0};
  std::vector<double> x0 = tridiag_precision_sample(f, zero);
  CHECK(x0[0] == doctest::Approx(0.0));
  CHECK(x0[1] == doctest::Approx(0.0));

  std::vector<double> z{1.0, -1.0};
  std::vector<double> z2{2.0, -2.0};
  std::vector<double> x1 = tridiag_precision_sample(f, z);
  std::vector<double> x2 = tridiag_precision_sample(f, z2);
  CHECK(x2[0] == doctest::Approx(2 * x1[0]).epsilon(1e-12));
  CHECK(x2[1] == doctest::Approx(2 * x1[1]).epsilon(1e-12));
}
