#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <thread>
#include <vector>

namespace ratelab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Kahan-Babuska-Neumaier compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Fixed-order pairwise reduction. The result depends only on the slot
// ordering, not on how many workers filled the slots.
inline double tree_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  std::vector<double> level(xs.begin(), xs.end());
  while (level.size() > 1) {
    std::size_t half = (level.size() + 1) / 2;
    for (std::size_t i = 0; i < level.size() / 2; ++i) {
      level[i] = level[2 * i] + level[2 * i + 1];
    }
    if (level.size() % 2 == 1) level[half - 1] = level.back();
    level.resize(half);
  }
  return level[0];
}

inline double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  KahanSum s;
  for (double x : xs) s.add(std::exp(x - m));
  return m + std::log(s.value());
}

inline double mean(std::span<const double> xs) {
  KahanSum s;
  for (double x : xs) s.add(x);
  return xs.empty() ? 0.0 : s.value() / static_cast<double>(xs.size());
}

inline double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs);
  KahanSum s;
  for (double x : xs) s.add((x - m) * (x - m));
  return std::sqrt(s.value() / static_cast<double>(xs.size() - 1));
}

// Order statistic at level q in [0,1], linear interpolation between ranks.
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  double pos = q * static_cast<double>(xs.size() - 1);
  std::size_t lo = static_cast<std::size_t>(pos);
  std::size_t hi = std::min(lo + 1, xs.size() - 1);
  double frac = pos - static_cast<double>(lo);
  return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each index writes
// its own output slot, so results are identical for any worker count.
inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  int workers = std::max(1, jobs);
  workers = static_cast<int>(std::min<std::size_t>(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ratelab
