#include "aeltl/random.hpp"

#include <algorithm>

#include "aeltl/error.hpp"

namespace aeltl {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Formula random_atom(Rng& rng, const Vocabulary& atoms) {
  int i = uniform(rng, 0, static_cast<int>(atoms.size()) - 1);
  Formula a = Formula::atom(atoms.name(i), i);
  return coin(rng, 0.3) ? !a : a;
}

Formula gen(Rng& rng, const Vocabulary& atoms, int temporal) {
  if (temporal == 0) {
    if (coin(rng, 0.8)) return random_atom(rng, atoms);
    return random_propositional(rng, atoms, 1);
  }
  switch (uniform(rng, 0, 7)) {
    case 0: return next(gen(rng, atoms, temporal - 1));
    case 1:
    case 2: return eventually(gen(rng, atoms, temporal - 1));
    case 3:
    case 4: return always(gen(rng, atoms, temporal - 1));
    case 5: {
      int l = uniform(rng, 0, temporal - 1);
      return until(gen(rng, atoms, l), gen(rng, atoms, temporal - 1 - l));
    }
    case 6: return !gen(rng, atoms, temporal);
    default: {
      int l = uniform(rng, 0, temporal);
      Formula a = gen(rng, atoms, l);
      Formula b = gen(rng, atoms, temporal - l);
      switch (uniform(rng, 0, 2)) {
        case 0: return a & b;
        case 1: return a | b;
        default: return implies(a, b);
      }
    }
  }
}

}  // namespace

PlanningDomain random_domain(Rng& rng, const RandomDomainOptions& o) {
  if (o.states < 1 || o.actions < 1) throw Error("random domain needs states and actions");
  std::vector<std::string> states, actions;
  for (int s = 0; s < o.states; ++s) states.push_back("s" + std::to_string(s));
  for (int a = 0; a < o.actions; ++a) actions.push_back("a" + std::to_string(a));
  PlanningDomain d = PlanningDomain::make(states, actions, Vocabulary(o.atoms));
  d.init = 0;
  for (int s = 0; s < o.states; ++s) {
    Letter l = 0;
    for (std::size_t i = 0; i < d.atoms.size(); ++i)
      if (coin(rng, o.label_density)) l |= Letter{1} << i;
    d.labels[s] = l;
    const int forced = uniform(rng, 0, o.actions - 1);
    for (int a = 0; a < o.actions; ++a) {
      if (a != forced && !coin(rng, o.applicable)) continue;
      const int k = uniform(rng, 1, std::min(o.max_branching, o.states));
      std::vector<int> all(static_cast<std::size_t>(o.states));
      for (int t = 0; t < o.states; ++t) all[t] = t;
      std::shuffle(all.begin(), all.end(), rng);
      all.resize(static_cast<std::size_t>(k));
      std::sort(all.begin(), all.end());
      d.successors(s, a) = all;
    }
  }
  return d;
}

FiniteMemoryPlan random_plan(Rng& rng, const PlanningDomain& d, int memory) {
  if (memory < 1) throw Error("plan needs at least one memory state");
  FiniteMemoryPlan p;
  for (int m = 0; m < memory; ++m) p.memory.push_back("m" + std::to_string(m));
  for (int m = 0; m < memory; ++m)
    for (int s = 0; s < static_cast<int>(d.num_states()); ++s) {
      auto acts = d.applicable_actions(s);
      if (acts.empty()) continue;
      int a = acts[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(acts.size()) - 1))];
      p.set(m, s, a, uniform(rng, 0, memory - 1));
    }
  return p;
}

Formula random_formula(Rng& rng, const Vocabulary& atoms, int temporal) {
  if (atoms.size() == 0) throw Error("random formula needs atoms");
  return gen(rng, atoms, temporal);
}

Formula random_propositional(Rng& rng, const Vocabulary& atoms, int depth) {
  if (depth <= 0 || coin(rng, 0.4)) return random_atom(rng, atoms);
  Formula a = random_propositional(rng, atoms, depth - 1);
  Formula b = random_propositional(rng, atoms, depth - 1);
  return coin(rng, 0.5) ? (a & b) : (a | b);
}

PathQuantifier random_quantifier(Rng& rng, int max_prefix, int max_period) {
  PathQuantifier q;
  auto letter = [&] { return coin(rng, 0.5) ? 'A' : 'E'; };
  const int pre = uniform(rng, 0, max_prefix);
  const int per = uniform(rng, 0, max_period);
  for (int i = 0; i < pre; ++i) q.prefix += letter();
  for (int i = 0; i < per; ++i) q.period += letter();
  if (q.prefix.empty() && q.period.empty()) q.prefix += letter();
  return q;
}

LassoWord random_lasso(Rng& rng, std::size_t atoms, std::size_t max_length) {
  LassoWord w;
  const int len = uniform(rng, 1, static_cast<int>(std::max<std::size_t>(1, max_length)));
  const int loop = uniform(rng, 1, len);
  const Letter mask = atoms >= 64 ? ~Letter{0} : (Letter{1} << atoms) - 1;
  std::uniform_int_distribution<Letter> dist;
  for (int i = 0; i < len; ++i) (i < len - loop ? w.stem : w.loop).push_back(dist(rng) & mask);
  return w;
}

}  // namespace aeltl
