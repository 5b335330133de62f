#include "ratelab/neighborhood.hpp"

#include <array>
#include <cmath>

#include "ratelab/divergence.hpp"
#include "ratelab/errors.hpp"
#include "ratelab/numeric.hpp"

namespace ratelab {

void NeighborhoodSpec::validate() const {
  if (!(epsilon > 0.0)) throw OutOfRange("NeighborhoodSpec: epsilon must be positive");
  if (n < 1) throw OutOfRange("NeighborhoodSpec: n must be >= 1");
  if (kind == NeighborhoodKind::bn && k <= 1) {
    throw OutOfRange("NeighborhoodSpec: moment order must exceed 1");
  }
}

namespace {

// Centered fourth moment of a sum of independent terms from the
// per-coordinate second and fourth centered moments.
double fourth_moment_of_sum(std::span<const double> mu2, std::span<const double> mu4) {
  KahanSum excess;
  KahanSum var;
  for (std::size_t i = 0; i < mu2.size(); ++i) {
    excess.add(mu4[i] - 3.0 * mu2[i] * mu2[i]);
    var.add(mu2[i]);
  }
  return excess.value() + 3.0 * var.value() * var.value();
}

}  // namespace

bool member(const NeighborhoodSpec& spec, const DiscreteExperiment& exp, ParameterId theta) {
  spec.validate();
  if (spec.n != exp.n()) throw DimensionMismatch("member: spec.n differs from experiment size");
  const double n = spec.n;
  const double eps2 = spec.epsilon * spec.epsilon;
  switch (spec.kind) {
    case NeighborhoodKind::wn: {
      // Joint H* condition through log(1 + 3/2 H*^2) additivity.
      KahanSum s;
      for (int i = 0; i < exp.n(); ++i) {
        double h = hellinger_star(exp.pmf(i, exp.truth()), exp.pmf(i, theta));
        if (!std::isfinite(h)) return false;
        s.add(std::log1p(1.5 * h * h));
      }
      return s.value() <= 1.5 * n * eps2;
    }
    case NeighborhoodKind::wn_bar: {
      KahanSum s;
      for (int i = 0; i < exp.n(); ++i) {
        double h = hellinger_star(exp.pmf(i, exp.truth()), exp.pmf(i, theta));
        if (!std::isfinite(h)) return false;
        s.add(h * h);
      }
      return s.value() / n <= eps2;
    }
    case NeighborhoodKind::bn: {
      if (spec.k != 2 && spec.k != 4) {
        throw UnsupportedKind("member: joint centered moment available for k = 2 or 4 only");
      }
      std::array<int, 2> ks{2, 4};
      KahanSum kl;
      std::vector<double> mu2(static_cast<std::size_t>(exp.n()));
      std::vector<double> mu4(static_cast<std::size_t>(exp.n()));
      for (int i = 0; i < exp.n(); ++i) {
        DivergenceReport rep = divergence_report(exp.pmf(i, exp.truth()), exp.pmf(i, theta),
                                                 std::span<const int>(ks.data(), 2));
        if (!std::isfinite(rep.kl)) return false;
        kl.add(rep.kl);
        mu2[static_cast<std::size_t>(i)] = rep.v_centered.at(2);
        mu4[static_cast<std::size_t>(i)] = rep.v_centered.at(4);
      }
      if (kl.value() > n * eps2) return false;
      double vk0 = 0;
      if (spec.k == 2) {
        KahanSum s;
        for (double v : mu2) s.add(v);
        vk0 = s.value();
      } else {
        vk0 = fourth_moment_of_sum(mu2, mu4);
      }
      return vk0 <= std::pow(n, spec.k / 2.0) * std::pow(spec.epsilon, spec.k);
    }
    case NeighborhoodKind::wn_markov:
      throw UnsupportedKind("member: wn_markov needs a chain experiment");
  }
  throw UnsupportedKind("member: unknown neighborhood kind");
}

bool member(const NeighborhoodSpec& spec, const GaussSeqModel& m, std::span<const double> theta) {
  spec.validate();
  const double n = spec.n;
  const double eps2 = spec.epsilon * spec.epsilon;
  std::vector<double> delta = m.displacement(m.theta0(), theta);
  double q = m.quad_form(delta);
  switch (spec.kind) {
    case NeighborhoodKind::wn:
      // (2/3)(e^{3q/8} - 1) <= (2/3)(e^{1.5 n eps^2} - 1) iff q <= 4 n eps^2.
      return q <= 4.0 * n * eps2;
    case NeighborhoodKind::wn_bar: {
      if (m.rho() != 0.0) {
        throw UnsupportedKind("member: wn_bar needs independent coordinates");
      }
      KahanSum s;
      for (double d : delta) {
        s.add((2.0 / 3.0) * std::expm1(3.0 * m.n() * d * d / 8.0));
      }
      return s.value() / n <= eps2;
    }
    case NeighborhoodKind::bn: {
      // log-ratio is Gaussian: KL = q/2, variance q, fourth moment 3 q^2.
      if (spec.k != 2 && spec.k != 4) {
        throw UnsupportedKind("member: joint centered moment available for k = 2 or 4 only");
      }
      if (q / 2.0 > n * eps2) return false;
      double vk0 = spec.k == 2 ? q : 3.0 * q * q;
      return vk0 <= std::pow(n, spec.k / 2.0) * std::pow(spec.epsilon, spec.k);
    }
    case NeighborhoodKind::wn_markov:
      throw UnsupportedKind("member: wn_markov needs a chain experiment");
  }
  throw UnsupportedKind("member: unknown neighborhood kind");
}

bool member(const NeighborhoodSpec& spec, const FiniteMarkovExperiment& m, ParameterId theta) {
  spec.validate();
  if (spec.kind != NeighborhoodKind::wn_markov) {
    throw UnsupportedKind("member: chain experiments support wn_markov only");
  }
  double trans = m.transition_hellinger_star2(m.truth().index, theta.index);
  double init = m.initial_hellinger_star2(m.truth().index, theta.index);
  return trans + init / spec.n <= spec.epsilon * spec.epsilon;
}

bool member(const NeighborhoodSpec& spec, const ArModel& m, std::span<const double> beta) {
  spec.validate();
  if (spec.kind != NeighborhoodKind::wn_markov) {
    throw UnsupportedKind("member: step-drift autoregressions support wn_markov only");
  }
  return m.transition_hstar2_to_truth(beta) <= spec.epsilon * spec.epsilon;
}

MassEstimate neighborhood_mass(const NeighborhoodSpec& spec, const DiscreteExperiment& exp,
                               const GridPrior& prior) {
  prior.validate();
  if (static_cast<int>(prior.weights.size()) != exp.parameter_count()) {
    throw DimensionMismatch("neighborhood_mass: prior size");
  }
  KahanSum s;
  for (int t = 0; t < exp.parameter_count(); ++t) {
    if (member(spec, exp, ParameterId{t})) s.add(prior.weights[static_cast<std::size_t>(t)]);
  }
  return {s.value(), 0.0};
}

MassEstimate neighborhood_mass(const NeighborhoodSpec& spec, const FiniteMarkovExperiment& m,
                               const GridPrior& prior) {
  prior.validate();
  if (static_cast<int>(prior.weights.size()) != m.parameter_count()) {
    throw DimensionMismatch("neighborhood_mass: prior size");
  }
  KahanSum s;
  for (int t = 0; t < m.parameter_count(); ++t) {
    if (member(spec, m, ParameterId{t})) s.add(prior.weights[static_cast<std::size_t>(t)]);
  }
  return {s.value(), 0.0};
}

MassEstimate neighborhood_mass_mc(const NeighborhoodSpec& spec, const ArModel& m,
                                  const StepUniformPrior& prior, int budget, Rng rng) {
  if (budget < 1) throw BudgetZero("neighborhood_mass_mc: zero sample budget");
  int hits = 0;
  for (int b = 0; b < budget; ++b) {
    std::vector<double> beta = prior.sample(rng);
    if (member(spec, m, beta)) ++hits;
  }
  double p = static_cast<double>(hits) / budget;
  return {p, std::sqrt(p * (1.0 - p) / budget)};
}

}  // namespace ratelab
