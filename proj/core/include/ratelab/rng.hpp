#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace ratelab {

// Counter-based splittable generator. A stream is (key, counter); derived
// streams hash (key, purpose-tag, replicate-index) so parallel replicates
// never share state and every draw is reproducible from the root seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(seed) {}

  // Child stream for a named purpose and replicate index.
  [[nodiscard]] Rng derive(std::string_view tag, std::uint64_t index) const;

  std::uint64_t next_u64();

  // Uniform on [0,1) with 53 random bits.
  double uniform01();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi);

  // Standard normal via the inverse-CDF map (Wichura's PPND16); one uniform
  // per draw, so the stream layout does not depend on call parity.
  double normal();

  // Index sample from an unnormalized nonnegative weight table.
  int discrete(std::span<const double> weights);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Standard normal quantile, |p - 1/2| mapped with ~1e-15 relative accuracy.
double normal_quantile(double p);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace ratelab
