#include <algorithm>

#include "aeltl/error.hpp"
#include "aeltl/synth.hpp"

namespace aeltl {

namespace {

std::vector<char> q_states(const PlanningDomain& d, const Formula& q) {
  if (q.temporal_count() != 0) throw Error("planner goal must be propositional: " + to_string(q));
  require_atoms(q, d.atoms);
  std::vector<char> out(d.num_states());
  for (std::size_t s = 0; s < d.num_states(); ++s)
    out[s] = eval_lasso(q, LassoWord{{}, {d.labels[s]}});
  return out;
}

bool all_in(const std::vector<int>& succ, const std::vector<char>& set) {
  return std::all_of(succ.begin(), succ.end(), [&](int t) { return set[t]; });
}

bool any_in(const std::vector<int>& succ, const std::vector<char>& set) {
  return std::any_of(succ.begin(), succ.end(), [&](int t) { return set[t]; });
}

// Memoryless plan from per-state actions; -1 falls back to the lowest
// applicable action.
SynthesisResult finish(const PlanningDomain& d, bool solvable, const std::vector<int>& act) {
  SynthesisResult r;
  r.solvable = solvable;
  if (!solvable) return r;
  FiniteMemoryPlan p;
  p.memory = {"m0"};
  for (int s = 0; s < static_cast<int>(d.num_states()); ++s) {
    int a = act[s];
    if (a < 0) {
      auto acts = d.applicable_actions(s);
      if (acts.empty()) continue;
      a = acts.front();
    }
    p.set(0, s, a, 0);
  }
  r.plan = std::move(p);
  return r;
}

// Least fixpoint from `target`: a state joins when some action leads into
// the current set, universally (strong) or existentially (weak).
// Returns the set; `act` records the action that added each state.
std::vector<char> backward(const PlanningDomain& d, std::vector<char> set, bool universal,
                           const std::vector<char>& allowed, std::vector<int>& act) {
  const int ns = static_cast<int>(d.num_states());
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> next = set;
    for (int s = 0; s < ns; ++s) {
      if (set[s] || !allowed[s]) continue;
      for (int a : d.applicable_actions(s)) {
        const auto& succ = d.successors(s, a);
        if (universal ? all_in(succ, set) : any_in(succ, set)) {
          next[s] = 1;
          act[s] = a;
          changed = true;
          break;
        }
      }
    }
    set = std::move(next);
  }
  return set;
}

}  // namespace

Canonical canonical_for(FqMode m) {
  switch (m) {
    case FqMode::kStrong: return Canonical::kA;
    case FqMode::kWeak: return Canonical::kE;
    case FqMode::kStrongCyclic: return Canonical::kAE;
  }
  return Canonical::kA;
}

Canonical canonical_for(GqMode m) {
  switch (m) {
    case GqMode::kStrong: return Canonical::kA;
    case GqMode::kWeak: return Canonical::kE;
    case GqMode::kStrongReachMaintain: return Canonical::kEA;
  }
  return Canonical::kA;
}

SynthesisResult plan_fq(const PlanningDomain& d, const Formula& q, FqMode mode) {
  const auto goal = q_states(d, q);
  const int ns = static_cast<int>(d.num_states());
  std::vector<int> act(d.num_states(), -1);
  const std::vector<char> everywhere(d.num_states(), 1);

  if (mode != FqMode::kStrongCyclic) {
    auto win = backward(d, goal, mode == FqMode::kStrong, everywhere, act);
    return finish(d, win[d.init], act);
  }

  // Strong cyclic: keep the states that can still reach the goal using only
  // actions that stay inside the candidate set.
  std::vector<char> cand(d.num_states(), 1);
  while (true) {
    std::vector<char> reach = goal;
    std::fill(act.begin(), act.end(), -1);
    for (int s = 0; s < ns; ++s) reach[s] = reach[s] && cand[s];
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<char> next = reach;
      for (int s = 0; s < ns; ++s) {
        if (reach[s] || !cand[s]) continue;
        for (int a : d.applicable_actions(s)) {
          const auto& succ = d.successors(s, a);
          if (all_in(succ, cand) && any_in(succ, reach)) {
            next[s] = 1;
            act[s] = a;
            changed = true;
            break;
          }
        }
      }
      reach = std::move(next);
    }
    if (reach == cand) break;
    cand = std::move(reach);
  }
  return finish(d, cand[d.init], act);
}

SynthesisResult plan_gq(const PlanningDomain& d, const Formula& q, GqMode mode) {
  const auto good = q_states(d, q);
  const int ns = static_cast<int>(d.num_states());
  std::vector<int> act(d.num_states(), -1);

  // Greatest fixpoint of q-states with an action staying inside.
  auto maintain = [&](bool universal) {
    std::vector<char> set = good;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < ns; ++s) {
        if (!set[s]) continue;
        act[s] = -1;
        for (int a : d.applicable_actions(s)) {
          const auto& succ = d.successors(s, a);
          if (universal ? all_in(succ, set) : any_in(succ, set)) {
            act[s] = a;
            break;
          }
        }
        if (act[s] < 0) {
          set[s] = 0;
          changed = true;
        }
      }
    }
    return set;
  };

  if (mode == GqMode::kStrong) {
    auto win = maintain(true);
    return finish(d, win[d.init], act);
  }
  if (mode == GqMode::kWeak) {
    auto win = maintain(false);
    return finish(d, win[d.init], act);
  }
  auto strong = maintain(true);
  auto win = backward(d, strong, false, good, act);
  return finish(d, win[d.init], act);
}

}  // namespace aeltl
