#pragma once

#include <map>
#include <span>
#include <vector>

#include "ratelab/linalg.hpp"

namespace ratelab {

// All finite-space functionals take densities as nonnegative vectors over a
// shared outcome grid; GridMismatch if lengths differ. Ratios at outcomes
// where the first density vanishes contribute zero; where only the second
// vanishes the functional is +inf. Sums are compensated.

// Hellinger distance H(f,g) = l2 norm of sqrt(f) - sqrt(g). Range [0, sqrt 2].
double hellinger(std::span<const double> f, std::span<const double> g);

// Modified Hellinger distance: the l2 norm of (sqrt f - sqrt g) weighted by
// ((2/3) sqrt(f/g) + 1/3)^{1/2}.
double hellinger_star(std::span<const double> f, std::span<const double> g);

// E_f[ sqrt(f/g) ]; equals 1 + (3/2) H*(f,g)^2.
double inverse_root_moment(std::span<const double> f, std::span<const double> g);

// E_f[ sqrt(g/f) ]; equals 1 - H(f,g)^2 / 2.
double affinity(std::span<const double> f, std::span<const double> g);

// sup of f/g over the common support (outcomes with f > 0).
double sup_ratio(std::span<const double> f, std::span<const double> g);

// Kullback-Leibler divergence K(f,g) = E_f[ log(f/g) ].
double kl_divergence(std::span<const double> f, std::span<const double> g);

struct DivergenceReport {
  double hellinger = 0;
  double hellinger_star = 0;
  double kl = 0;
  double sup_ratio = 0;
  std::map<int, double> v_raw;       // k -> E_f |log(f/g)|^k
  std::map<int, double> v_centered;  // k -> E_f |log(f/g) - K|^k
};

// One pass over the grid computing all scalar divergences plus the requested
// log-ratio moments (each k must be >= 1).
DivergenceReport divergence_report(std::span<const double> f, std::span<const double> g,
                                   std::span<const int> ks);

// Root-mean-square Hellinger over coordinates: sqrt((1/n) sum H(f_i,g_i)^2).
struct DensityPair {
  std::vector<double> f;
  std::vector<double> g;
};
double avg_hellinger(std::span<const DensityPair> coords);

// Tensor-product identity check: H and H* of the product measure computed by
// full state enumeration next to the values implied by the per-coordinate
// factorizations 1 - H^2/2 = prod(1 - H_i^2/2) and
// 1 + (3/2) H*^2 = prod(1 + (3/2) H*_i^2).
struct ProductAffinity {
  double h2_enumerated = 0;
  double h2_factorized = 0;
  double hstar2_enumerated = 0;
  double hstar2_factorized = 0;
  std::size_t states = 0;
};
ProductAffinity product_affinity_check(std::span<const DensityPair> coords,
                                       std::size_t max_states = 1'000'000);

// Gaussian closed forms for N(delta, Sigma) against N(0, Sigma), driven by
// the precision matrix P = Sigma^{-1} (checked SPD):
//   q = delta^T P delta, H^2 = 2 - 2 exp(-q/8), H*^2 = (2/3)(exp(3q/8) - 1).
struct GaussianDivergence {
  double q = 0;
  double h2 = 0;
  double hstar2 = 0;
};
GaussianDivergence gaussian_closed_forms(std::span<const double> delta, const DenseMatrix& precision);

// Truncated series for H*(Poisson(a), Poisson(b))^2 plus a rigorous bound on
// the discarded tail (requires trunc large enough that terms are decaying).
struct PoissonHstar {
  double value = 0;
  double tail_bound = 0;
};
PoissonHstar poisson_hstar_bound(double a, double b, double lo, double hi, int trunc = 60);

// Comparison constant C(lo,hi) with H*(Poi(a),Poi(b))^2 <= C(lo,hi) (a-b)^2
// for lo <= a,b <= hi: e^{(hi-3lo)/2} sum_x (hi^{x/2}+x hi^{x/2-1})^2 (hi/lo)^{x/2}/x!.
double poisson_hstar_constant(double lo, double hi, int trunc = 60);

}  // namespace ratelab
