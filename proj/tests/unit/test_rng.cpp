#include <doctest.h>

#include <cmath>
#include <vector>

#include "ratelab/rng.hpp"

using namespace ratelab;

TEST_CASE("same seed reproduces the stream") {
  Rng a(123);
  Rng b(123);
  for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derived streams are independent of the parent's position") {
  Rng parent(9);
  Rng child_before = parent.derive("tag", 3);
  parent.next_u64();
  parent.next_u64();
  Rng child_after = parent.derive("tag", 3);
  CHECK(child_before.next_u64() == child_after.next_u64());
}

TEST_CASE("derivation separates tags and indices") {
  Rng root(7);
  CHECK(root.derive("a", 0).next_u64() != root.derive("a", 1).next_u64());
  CHECK(root.derive("a", 0).next_u64() != root.derive("b", 0).next_u64());
}

TEST_CASE("uniform01 stays in the half-open unit interval") {
  Rng rng(2024);
  double mean = 0;
  for (int i = 0; i < 4000; ++i) {
    double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    mean += u;
  }
  mean /= 4000;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("normal draws have the right first two moments") {
  Rng rng(5);
  double sum = 0;
  double sumsq = 0;
  const int draws = 8000;
  for (int i = 0; i < draws; ++i) {
    double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  CHECK(sum / draws == doctest::Approx(0.0).epsilon(0.05));
  CHECK(sumsq / draws == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("discrete sampling follows the weight table") {
  Rng rng(11);
  std::vector<double> weights{0.0, 1.0, 3.0};
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 6000; ++i) ++counts[rng.discrete(weights)];
  CHECK(counts[0] == 0);
  CHECK(static_cast<double>(counts[2]) / counts[1] == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("normal quantile inverts the cdf") {
  for (double x : {-2.5, -1.0, -0.3, 0.0, 0.7, 1.9}) {
    CHECK(normal_quantile(normal_cdf(x)) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
}
