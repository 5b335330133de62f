#include <doctest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#include "ratelab/numeric.hpp"

using namespace ratelab;

TEST_CASE("compensated summation fixes the classic decimal drift") {
  KahanSum acc;
  for (int i = 0; i < 10; ++i) acc.add(0.1);
  CHECK(acc.value() == doctest::Approx(1.0).epsilon(1e-15));

  std::vector<double> tenths(10, 0.1);
  CHECK(tree_sum(tenths) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("log_sum_exp matches direct evaluation and honours -inf") {
  std::vector<double> logs{std::log(1.0), std::log(2.0), std::log(3.0)};
  CHECK(log_sum_exp(logs) == doctest::Approx(std::log(6.0)).epsilon(1e-14));

  std::vector<double> with_ninf{kNegInf, std::log(2.0)};
  CHECK(log_sum_exp(with_ninf) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  std::vector<double> all_ninf{kNegInf, kNegInf};
  CHECK(log_sum_exp(all_ninf) == kNegInf);
}

TEST_CASE("log_sum_exp survives large offsets") {
  std::vector<double> logs{1000.0, 1000.0 + std::log(2.0)};
  CHECK(log_sum_exp(logs) == doctest::Approx(1000.0 + std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("quantile interpolates linearly") {
  std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  CHECK(quantile(v, 0.0) == doctest::Approx(1.0));
  CHECK(quantile(v, 1.0) == doctest::Approx(4.0));
  CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
  CHECK(median(v) == doctest::Approx(2.5));

  std::vector<double> ten;
  for (int i = 0; i <= 9; ++i) ten.push_back(static_cast<double>(i));
  CHECK(quantile(ten, 0.9) == doctest::Approx(8.1).epsilon(1e-12));
}

TEST_CASE("mean and sample standard deviation") {
  std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == doctest::Approx(2.5));
  CHECK(sample_sd(v) == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("parallel_for touches every slot exactly once") {
  const std::size_t count = 503;
  std::vector<std::atomic<int>> hits(count);
  for (auto& h : hits) h = 0;
  parallel_for(count, 4, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (std::size_t i = 0; i < count; ++i) CHECK(hits[i].load() == 1);
}

TEST_CASE("parallel_for with one job equals a serial loop") {
  std::vector<double> a(100), b(100);
  parallel_for(100, 1, [&](std::size_t i) { a[i] = std::sqrt(static_cast<double>(i)); });
  for (std::size_t i = 0; i < 100; ++i) b[i] = std::sqrt(static_cast<double>(i));
  CHECK(a == b);
}
