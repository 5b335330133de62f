#include "ratelab/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pairwise distances and the bitmask of each candidate ball's contents.
struct Geometry {
  std::size_t m = 0;
  std::vector<double> dist;           // m*m
  std::vector<std::uint32_t> ball;    // ball[c] = points within delta of c

  double d(std::size_t i, std::size_t j) const { return dist[i * m + j]; }
};

Geometry build_geometry(const WeightedParameterSet& set, double delta) {
  Geometry g;
  g.m = set.size();
  g.dist.resize(g.m * g.m, 0.0);
  for (std::size_t i = 0; i < g.m; ++i) {
    for (std::size_t j = i + 1; j < g.m; ++j) {
      double d = set.metric(set.ids[i], set.ids[j]);
      if (!(d >= 0.0)) throw OutOfRange("metric returned a negative or NaN distance");
      g.dist[i * g.m + j] = d;
      g.dist[j * g.m + i] = d;
    }
  }
  g.ball.resize(g.m, 0);
  for (std::size_t c = 0; c < g.m; ++c) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < g.m; ++i) {
      if (g.d(c, i) <= delta) mask |= (1u << i);
    }
    g.ball[c] = mask;
  }
  return g;
}

// Greedy max-coverage; ties toward the lowest position.
std::vector<std::size_t> greedy_cover(const WeightedParameterSet& set, double delta) {
  const std::size_t m = set.size();
  std::vector<std::size_t> centers;
  std::vector<char> covered(m, 0);
  std::size_t remaining = m;
  // Ball membership recomputed on demand so this path also serves m > 32.
  auto in_ball = [&](std::size_t c, std::size_t i) {
    return set.metric(set.ids[c], set.ids[i]) <= delta;
  };
  while (remaining > 0) {
    std::size_t best = m;
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t gain = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (!covered[i] && in_ball(c, i)) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    if (best == m) throw OutOfRange("greedy_cover: point with no covering ball");
    centers.push_back(best);
    for (std::size_t i = 0; i < m; ++i) {
      if (!covered[i] && in_ball(best, i)) {
        covered[i] = 1;
        --remaining;
      }
    }
  }
  return centers;
}

CoverCertificate finish_from_centers(const WeightedParameterSet& set, double delta, double alpha,
                                     const std::vector<std::size_t>& centers, bool exact) {
  const std::size_t m = set.size();
  CoverCertificate cert;
  cert.delta = delta;
  cert.alpha = alpha;
  cert.exact = exact;
  cert.covering_number = static_cast<int>(centers.size());
  cert.ball_centers.reserve(centers.size());
  for (std::size_t c : centers) cert.ball_centers.push_back(set.ids[c]);
  cert.assignment.assign(m, -1);
  std::vector<double> block_mass(centers.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t b = 0; b < centers.size(); ++b) {
      if (set.metric(set.ids[centers[b]], set.ids[i]) <= delta) {
        cert.assignment[i] = static_cast<int>(b);
        block_mass[b] += set.weights[i];
        break;
      }
    }
    if (cert.assignment[i] < 0) throw OutOfRange("cover certificate: uncovered point");
  }
  KahanSum s;
  for (double w : block_mass) s.add(std::pow(w, alpha));
  cert.hausdorff_constant = s.value();
  return cert;
}

}  // namespace

double WeightedParameterSet::total_weight() const {
  KahanSum s;
  for (double w : weights) s.add(w);
  return s.value();
}

CoverCertificate covering_number(const WeightedParameterSet& set, double delta,
                                 std::size_t exact_limit) {
  if (set.ids.size() != set.weights.size()) {
    throw DimensionMismatch("covering_number: ids/weights lengths differ");
  }
  if (!(delta > 0.0)) throw OutOfRange("covering_number: delta must be positive");
  const std::size_t m = set.size();
  if (m == 0) {
    CoverCertificate cert;
    cert.delta = delta;
    return cert;  // zero balls cover the empty set
  }
  if (m > exact_limit || m > 20) {
    return finish_from_centers(set, delta, 1.0, greedy_cover(set, delta), false);
  }

  Geometry g = build_geometry(set, delta);
  const std::uint32_t full = m == 32 ? 0xffffffffu : ((1u << m) - 1u);
  std::vector<std::uint8_t> dp(full + 1u, 0xff);
  std::vector<std::uint8_t> choice(full + 1u, 0xff);
  std::vector<std::uint32_t> parent(full + 1u, 0);
  dp[0] = 0;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (dp[mask] == 0xff) continue;
    if (mask == full) break;
    std::uint32_t uncovered = full & ~mask;
    std::size_t i = static_cast<std::size_t>(std::countr_zero(uncovered));
    for (std::size_t c = 0; c < m; ++c) {
      if (!(g.ball[c] & (1u << i))) continue;
      std::uint32_t next = mask | g.ball[c];
      if (dp[next] > dp[mask] + 1) {
        dp[next] = static_cast<std::uint8_t>(dp[mask] + 1);
        choice[next] = static_cast<std::uint8_t>(c);
        parent[next] = mask;
      }
    }
  }
  std::vector<std::size_t> centers;
  for (std::uint32_t mask = full; mask != 0; mask = parent[mask]) {
    centers.push_back(choice[mask]);
  }
  std::sort(centers.begin(), centers.end());
  return finish_from_centers(set, delta, 1.0, centers, true);
}

CoverCertificate hausdorff_constant(const WeightedParameterSet& set, double delta, double alpha,
                                    std::size_t exact_limit, std::size_t cover_exact_limit) {
  if (set.ids.size() != set.weights.size()) {
    throw DimensionMismatch("hausdorff_constant: ids/weights lengths differ");
  }
  if (!(delta > 0.0)) throw OutOfRange("hausdorff_constant: delta must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw OutOfRange("hausdorff_constant: alpha in (0,1]");
  const std::size_t m = set.size();

  CoverCertificate cover = covering_number(set, delta, cover_exact_limit);
  if (m == 0) {
    cover.alpha = alpha;
    cover.hausdorff_constant = 0.0;  // convention: C of the empty set is 0
    return cover;
  }
  if (m > exact_limit || m > 20) {
    // Cover-induced partition: an upper bound for the exact constant.
    CoverCertificate cert = cover;
    cert.alpha = alpha;
    cert.exact = false;
    std::vector<double> block_mass(cert.ball_centers.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      block_mass[static_cast<std::size_t>(cert.assignment[i])] += set.weights[i];
    }
    KahanSum s;
    for (double w : block_mass) s.add(std::pow(w, alpha));
    cert.hausdorff_constant = s.value();
    return cert;
  }

  Geometry g = build_geometry(set, delta);
  const std::uint32_t full = m == 32 ? 0xffffffffu : ((1u << m) - 1u);

  // feasible_center[S] = lowest center whose ball contains S, or m if none.
  std::vector<std::uint8_t> feasible_center(full + 1u, static_cast<std::uint8_t>(m));
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (std::size_t c = 0; c < m; ++c) {
      if ((s & g.ball[c]) == s) {
        feasible_center[s] = static_cast<std::uint8_t>(c);
        break;
      }
    }
  }
  // Subset masses from the low-bit recursion.
  std::vector<double> mass(full + 1u, 0.0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    std::uint32_t low = s & (~s + 1u);
    mass[s] = mass[s & (s - 1u)] + set.weights[static_cast<std::size_t>(std::countr_zero(low))];
  }

  std::vector<double> dp(full + 1u, kInf);
  std::vector<std::uint32_t> block(full + 1u, 0);
  dp[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t low = mask & (~mask + 1u);
    // Enumerate submasks of mask containing the lowest set bit.
    for (std::uint32_t sub = mask;; sub = (sub - 1u) & mask) {
      if ((sub & low) && feasible_center[sub] < m) {
        double cand = std::pow(mass[sub], alpha) + dp[mask & ~sub];
        if (cand < dp[mask]) {
          dp[mask] = cand;
          block[mask] = sub;
        }
      }
      if (sub == 0) break;
    }
  }
  if (!(dp[full] < kInf)) throw OutOfRange("hausdorff_constant: point with no covering ball");

  CoverCertificate cert;
  cert.delta = delta;
  cert.alpha = alpha;
  cert.exact = cover.exact;  // partition side is exact here; combine with cover flag
  cert.covering_number = cover.covering_number;
  cert.hausdorff_constant = dp[full];
  cert.assignment.assign(m, -1);
  for (std::uint32_t mask = full; mask != 0; mask &= ~block[mask]) {
    std::uint32_t sub = block[mask];
    std::size_t center = feasible_center[sub];
    int block_index = static_cast<int>(cert.ball_centers.size());
    cert.ball_centers.push_back(set.ids[center]);
    for (std::uint32_t rest = sub; rest != 0; rest &= rest - 1u) {
      std::size_t p = static_cast<std::size_t>(std::countr_zero(rest));
      cert.assignment[p] = block_index;
    }
  }
  return cert;
}

WeightedParameterSet shell(const WeightedParameterSet& set,
                           const std::function<double(int)>& dist_to_truth, double lo, double hi) {
  if (!(lo <= hi)) throw OutOfRange("shell: need lo <= hi");
  WeightedParameterSet out;
  out.metric = set.metric;
  for (std::size_t i = 0; i < set.size(); ++i) {
    double d = dist_to_truth(set.ids[i]);
    if (d > lo && d <= hi) {
      out.ids.push_back(set.ids[i]);
      out.weights.push_back(set.weights[i]);
    }
  }
  return out;
}

}  // namespace ratelab
