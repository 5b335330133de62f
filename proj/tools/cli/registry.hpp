#pragma once

#include <string>
#include <vector>

#include "ratelab/experiment.hpp"
#include "ratelab/markov.hpp"
#include "ratelab/prior.hpp"

namespace ratelab::cli {

// Named product experiments. `binary5` and `binary5-onesided` take the
// coordinate count from `n`; `ternary7` (12 fixed coordinates) and
// `poisson-partition` (64 covariates, 20 logistic rate links) ignore it.
DiscreteExperiment make_experiment(const std::string& name, int n);

// Named chain experiments; currently `chain2`, a two-state five-parameter
// family with the uniform reference measure.
FiniteMarkovExperiment make_chain(const std::string& name, int n);

// Named grid priors over `count` parameters: `uniform`, or `off-truth`
// (uniform over every point except `truth`, which gets weight zero).
GridPrior make_prior(const std::string& name, int count, int truth);

std::vector<std::string> known_experiments();
std::vector<std::string> known_chains();
std::vector<std::string> known_priors();

}  // namespace ratelab::cli
