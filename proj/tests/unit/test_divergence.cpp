#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "ratelab/divergence.hpp"
#include "ratelab/errors.hpp"
#include "ratelab/poisson_reg.hpp"
#include "ratelab/rng.hpp"

using namespace ratelab;

namespace {

const std::vector<double> kFair{0.5, 0.5};
const std::vector<double> kTilted{0.25, 0.75};

std::vector<double> random_pmf(Rng& rng, int outcomes) {
  std::vector<double> p(static_cast<std::size_t>(outcomes));
  double total = 0;
  for (double& v : p) {
    v = 0.05 + rng.uniform01();
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

TEST_CASE("frozen values for the half/quarter binary pair") {
  double h = hellinger(kFair, kTilted);
  CHECK(h * h == doctest::Approx(0.068148).epsilon(1e-6));
  CHECK(h == doctest::Approx(0.261052).epsilon(1e-6));

  double hs = hellinger_star(kFair, kTilted);
  CHECK(hs * hs == doctest::Approx(0.076903).epsilon(1e-6));
  CHECK(hs == doctest::Approx(0.277315).epsilon(1e-6));

  CHECK(inverse_root_moment(kFair, kTilted) == doctest::Approx(1.115355).epsilon(1e-6));
  CHECK(affinity(kFair, kTilted) == doctest::Approx(1.0 - 0.068148 / 2).epsilon(1e-6));
  CHECK(sup_ratio(kFair, kTilted) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(kl_divergence(kFair, kTilted) == doctest::Approx(0.143841).epsilon(1e-6));

  // Sandwich endpoints for the same pair.
  CHECK(h / std::sqrt(3.0) == doctest::Approx(0.150719).epsilon(1e-6));
  CHECK(std::pow(sup_ratio(kFair, kTilted), 0.25) * h == doctest::Approx(0.310445).epsilon(1e-6));
}

TEST_CASE("log-ratio moments of the frozen pair") {
  std::vector<int> ks{2, 4};
  DivergenceReport report = divergence_report(kFair, kTilted, ks);
  CHECK(report.kl == doctest::Approx(0.143841).epsilon(1e-6));
  CHECK(report.v_centered.at(2) == doctest::Approx(0.301737).epsilon(1e-6));
  // Raw second moment, by hand: 0.5 log(2)^2 + 0.5 log(2/3)^2.
  double raw = 0.5 * std::log(2.0) * std::log(2.0) + 0.5 * std::log(2.0 / 3.0) * std::log(2.0 / 3.0);
  CHECK(report.v_raw.at(2) == doctest::Approx(raw).epsilon(1e-12));
  CHECK(report.hellinger == doctest::Approx(0.261052).epsilon(1e-6));
  CHECK(report.sup_ratio == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("identities hold to machine precision on random pairs") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> f = random_pmf(rng, 2 + trial % 5);
    std::vector<double> g = random_pmf(rng, 2 + trial % 5);
    double h = hellinger(f, g);
    double hs = hellinger_star(f, g);
    CHECK(inverse_root_moment(f, g) == doctest::Approx(1.0 + 1.5 * hs * hs).epsilon(1e-12));
    CHECK(affinity(f, g) == doctest::Approx(1.0 - 0.5 * h * h).epsilon(1e-12));
    // Sandwich.
    CHECK(h / std::sqrt(3.0) <= hs + 1e-12);
    CHECK(hs <= std::pow(sup_ratio(f, g), 0.25) * h + 1e-12);
  }
}

TEST_CASE("disjoint supports reach the hellinger ceiling") {
  std::vector<double> f{1.0, 0.0};
  std::vector<double> g{0.0, 1.0};
  CHECK(hellinger(f, g) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(affinity(f, g) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sup_ratio(f, g) == std::numeric_limits<double>::infinity());
  CHECK(inverse_root_moment(f, g) == std::numeric_limits<double>::infinity());
}

TEST_CASE("mismatched grids are rejected") {
  std::vector<double> f{0.5, 0.5};
  std::vector<double> g{0.2, 0.3, 0.5};
  CHECK_THROWS_AS((void)hellinger(f, g), GridMismatch);
  CHECK_THROWS_AS((void)kl_divergence(f, g), GridMismatch);
}

TEST_CASE("rms hellinger over coordinates") {
  std::vector<DensityPair> coords(2);
  coords[0] = {kFair, kTilted};
  coords[1] = {kFair, kTilted};
  double h = hellinger(kFair, kTilted);
  CHECK(avg_hellinger(coords) == doctest::Approx(h).epsilon(1e-12));
  // Hand value for per-coordinate distances 0.3 and 0.4.
  CHECK(std::sqrt((0.09 + 0.16) / 2.0) == doctest::Approx(0.353553).epsilon(1e-6));
}

TEST_CASE("tensor product affinities factorize") {
  std::vector<DensityPair> coords(2);
  coords[0] = {kFair, kTilted};
  coords[1] = {kFair, kTilted};
  ProductAffinity pa = product_affinity_check(coords);
  CHECK(pa.states == 4);
  CHECK(pa.h2_enumerated == doctest::Approx(pa.h2_factorized).epsilon(1e-12));
  CHECK(pa.hstar2_enumerated == doctest::Approx(pa.hstar2_factorized).epsilon(1e-12));
  // Frozen: two copies give product moment 1.115355^2 = 1.244017.
  CHECK(1.0 + 1.5 * pa.hstar2_factorized == doctest::Approx(1.244017).epsilon(1e-5));

  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<DensityPair> random_coords(5);
    for (DensityPair& c : random_coords) {
      c.f = random_pmf(rng, 3);
      c.g = random_pmf(rng, 3);
    }
    ProductAffinity check = product_affinity_check(random_coords);
    CHECK(check.h2_enumerated == doctest::Approx(check.h2_factorized).epsilon(1e-12));
    CHECK(check.hstar2_enumerated == doctest::Approx(check.hstar2_factorized).epsilon(1e-12));
  }
}

TEST_CASE("tensor enumeration respects the state budget") {
  std::vector<DensityPair> coords(21, DensityPair{kFair, kTilted});
  CHECK_THROWS_AS((void)product_affinity_check(coords, 1'000'000), StateSpaceTooLarge);
}

TEST_CASE("gaussian closed forms at unit displacement") {
  DenseMatrix p = DenseMatrix::identity(1);
  GaussianDivergence d = gaussian_closed_forms(std::vector<double>{1.0}, p);
  CHECK(d.q == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.h2 == doctest::Approx(0.235006).epsilon(1e-6));
  CHECK(d.hstar2 == doctest::Approx(0.303327).epsilon(1e-6));
}

TEST_CASE("gaussian closed forms reject indefinite precision") {
  DenseMatrix p(2);
  p.at(0, 0) = 1;
  p.at(0, 1) = 2;
  p.at(1, 0) = 2;
  p.at(1, 1) = 1;
  CHECK_THROWS_AS((void)gaussian_closed_forms(std::vector<double>{1.0, 0.0}, p),
                  NotPositiveDefinite);
}

TEST_CASE("poisson masses and the modified-hellinger series") {
  PoissonPmf pmf = poisson_pmf(1.0, 30);
  CHECK(pmf.mass[0] == doctest::Approx(0.367879).epsilon(1e-6));
  CHECK(pmf.tail < 1e-12);
  double total = pmf.tail;
  for (double m : pmf.mass) total += m;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  PoissonHstar hs = poisson_hstar_bound(1.0, 1.5, 1.0, 2.0);
  // Direct log-space summation as an independent path.
  double irm = 0;
  for (int x = 0; x <= 200; ++x) {
    double lf = -1.0 + x * std::log(1.0) - std::lgamma(x + 1.0);
    double lg = -1.5 + x * std::log(1.5) - std::lgamma(x + 1.0);
    irm += std::exp(1.5 * lf - 0.5 * lg);
  }
  CHECK(hs.value == doctest::Approx((2.0 / 3.0) * (irm - 1.0)).epsilon(1e-10));
  CHECK(hs.tail_bound < 1e-10);
}

TEST_CASE("poisson comparison constant dominates the squared distance") {
  double c = poisson_hstar_constant(1.0, 2.0);
  CHECK(c > 0);
  for (double a : {1.0, 1.3, 1.7, 2.0}) {
    for (double b : {1.0, 1.2, 1.6, 2.0}) {
      PoissonHstar hs = poisson_hstar_bound(a, b, 1.0, 2.0);
      CHECK(hs.value <= c * (a - b) * (a - b) + hs.tail_bound + 1e-12);
    }
  }
}
