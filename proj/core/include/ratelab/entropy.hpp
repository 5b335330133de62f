#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ratelab {

// Distance between two points named by their external ids.
using MetricFn = std::function<double(int, int)>;

// Finite set of parameters with prior masses and a metric. `ids` are the
// caller's labels (grid indices); weights align with ids.
struct WeightedParameterSet {
  std::vector<int> ids;
  std::vector<double> weights;
  MetricFn metric;

  [[nodiscard]] std::size_t size() const { return ids.size(); }
  [[nodiscard]] double total_weight() const;
};

// Certificate for a covering / partition computation at radius delta.
//  - ball_centers: external ids of the balls used, in order of first use;
//  - assignment[p]: index into ball_centers for point position p;
//  - covering_number: minimal (or greedy) number of delta-balls;
//  - hausdorff_constant: sum over partition blocks of block-mass^alpha
//    (alpha = 1 for a plain covering run, where it equals the total mass);
//  - exact: true when every search involved ran exhaustively.
struct CoverCertificate {
  double delta = 0;
  double alpha = 1;
  std::vector<int> ball_centers;
  std::vector<int> assignment;
  int covering_number = 0;
  double hausdorff_constant = 0;
  bool exact = true;
};

// Minimal number of closed delta-balls centered at set points covering the
// set. Exhaustive set-cover search up to `exact_limit` points (mask DP),
// greedy max-coverage beyond (ties broken toward the lowest id).
CoverCertificate covering_number(const WeightedParameterSet& set, double delta,
                                 std::size_t exact_limit = 20);

// Minimal sum of block-mass^alpha over partitions of the set into pieces
// each contained in some closed delta-ball centered at a set point.
// Exhaustive partition search (submask DP) up to `exact_limit` points,
// greedy cover-induced partition beyond. The certificate also carries the
// covering number at the same delta for the sandwich
//   mass^alpha <= C <= mass^alpha * N^{1-alpha}.
CoverCertificate hausdorff_constant(const WeightedParameterSet& set, double delta, double alpha,
                                    std::size_t exact_limit = 12,
                                    std::size_t cover_exact_limit = 20);

// Annulus lo < d(point, truth) <= hi under the supplied distance-to-truth.
WeightedParameterSet shell(const WeightedParameterSet& set,
                           const std::function<double(int)>& dist_to_truth, double lo, double hi);

}  // namespace ratelab
