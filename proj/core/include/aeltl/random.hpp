#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aeltl/domain.hpp"
#include "aeltl/ltl.hpp"
#include "aeltl/quantifier.hpp"

namespace aeltl {

using Rng = std::mt19937_64;

struct RandomDomainOptions {
  int states = 4;
  int actions = 2;
  std::vector<std::string> atoms{"p", "q"};
  double applicable = 0.7;  // chance that an action is applicable in a state
  int max_branching = 2;
  double label_density = 0.5;
};

// Serial, well-formed domain; every state has at least one applicable action.
PlanningDomain random_domain(Rng& rng, const RandomDomainOptions& o = {});

// Valid plan with `memory` memory states and random rules everywhere.
FiniteMemoryPlan random_plan(Rng& rng, const PlanningDomain& d, int memory = 1);

// Formula with exactly `temporal` temporal operators over the given atoms.
Formula random_formula(Rng& rng, const Vocabulary& atoms, int temporal);
// Propositional formula of bounded depth.
Formula random_propositional(Rng& rng, const Vocabulary& atoms, int depth = 1);

PathQuantifier random_quantifier(Rng& rng, int max_prefix, int max_period);

LassoWord random_lasso(Rng& rng, std::size_t atoms, std::size_t max_length);

}  // namespace aeltl
