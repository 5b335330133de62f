#pragma once

#include <span>
#include <vector>

#include "ratelab/experiment.hpp"
#include "ratelab/rng.hpp"

namespace ratelab {

// Dominance certificate a0 * r(y) <= p(y|x) <= a1 * r(y) for every
// parameter, state x and outcome y.
struct MarkovBoundsCertificate {
  double a0 = 0;
  double a1 = 0;
};

// Markov chain over finitely many states with a finite parameter grid.
// A batch holds the path (x_0, ..., x_n): n transitions plus slot 0.
class FiniteMarkovExperiment {
 public:
  struct ChainParam {
    std::vector<double> initial;             // pmf over states
    std::vector<std::vector<double>> rows;   // rows[x][y] transition pmf
  };

  // reference: pmf r over states defining nu = r * counting measure.
  FiniteMarkovExperiment(std::vector<ChainParam> params, int n, int truth,
                         std::vector<double> reference);

  [[nodiscard]] int parameter_count() const { return static_cast<int>(params_.size()); }
  [[nodiscard]] int state_count() const { return states_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] ParameterId truth() const { return {truth_}; }
  [[nodiscard]] const ChainParam& param(int i) const { return params_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] std::span<const double> reference() const { return ref_; }

  [[nodiscard]] double log_density(ParameterId theta, const SampleBatch& path) const;
  [[nodiscard]] double log_likelihood_ratio(ParameterId theta, const SampleBatch& path) const;
  [[nodiscard]] SampleBatch sample(ParameterId theta, Rng rng) const;
  [[nodiscard]] SampleBatch sample_truth(Rng rng) const;

  // min/max of p(y|x)/r(y) over all parameters, states and outcomes.
  [[nodiscard]] MarkovBoundsCertificate bounds() const;

  // nu-averaged transition Hellinger distance:
  //   d(t1,t2)^2 = sum_x nu(x) sum_y (sqrt p1(y|x) - sqrt p2(y|x))^2.
  [[nodiscard]] double transition_hellinger(int t1, int t2) const;

  // Same average for the modified Hellinger functional (squared).
  [[nodiscard]] double transition_hellinger_star2(int t1, int t2) const;

  // H*(q_{t1}, q_{t2})^2 between initial laws.
  [[nodiscard]] double initial_hellinger_star2(int t1, int t2) const;

 private:
  std::vector<ChainParam> params_;
  std::vector<double> ref_;
  int states_ = 0;
  int n_ = 0;
  int truth_ = 0;
};

}  // namespace ratelab
