#include "aeltl/domain.hpp"

#include <algorithm>
#include <deque>

#include "aeltl/error.hpp"

namespace aeltl {

std::vector<int> PlanningDomain::applicable_actions(int s) const {
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(num_actions()); ++a)
    if (applicable(s, a)) out.push_back(a);
  return out;
}

int PlanningDomain::state_index(std::string_view name) const {
  auto it = std::find(states.begin(), states.end(), name);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int PlanningDomain::action_index(std::string_view name) const {
  auto it = std::find(actions.begin(), actions.end(), name);
  return it == actions.end() ? -1 : static_cast<int>(it - actions.begin());
}

std::vector<int> PlanningDomain::arities() const {
  std::vector<int> out;
  for (const auto& t : succ)
    if (!t.empty()) out.push_back(static_cast<int>(t.size()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PlanningDomain PlanningDomain::make(std::vector<std::string> states,
                                    std::vector<std::string> actions, Vocabulary atoms) {
  PlanningDomain d;
  d.states = std::move(states);
  d.actions = std::move(actions);
  d.atoms = std::move(atoms);
  d.labels.assign(d.states.size(), 0);
  d.succ.assign(d.states.size() * d.actions.size(), {});
  return d;
}

std::vector<std::string> validate(const PlanningDomain& d) {
  std::vector<std::string> v;
  const int n = static_cast<int>(d.num_states());
  if (n == 0) v.push_back("empty: domain has no states");
  if (d.init < 0 || d.init >= n) v.push_back("init: initial state out of range");
  if (d.labels.size() != d.num_states()) v.push_back("labels: one label per state required");
  if (d.succ.size() != d.num_states() * d.num_actions()) {
    v.push_back("transitions: table size mismatch");
    return v;
  }
  const Letter declared = d.atoms.size() == 64 ? ~Letter{0} : (Letter{1} << d.atoms.size()) - 1;
  for (int s = 0; s < n; ++s) {
    if (s < static_cast<int>(d.labels.size()) && (d.labels[s] & ~declared) != 0) {
      v.push_back("labels: state '" + d.states[s] + "' uses undeclared atoms");
    }
    bool serial = false;
    for (int a = 0; a < static_cast<int>(d.num_actions()); ++a) {
      const auto& t = d.successors(s, a);
      if (!t.empty()) serial = true;
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < 0 || t[k] >= n) {
          v.push_back("transitions: successor out of range for ('" + d.states[s] + "', '" +
                      d.actions[a] + "')");
          break;
        }
        if (k > 0 && t[k - 1] >= t[k]) {
          v.push_back("unordered successors: ('" + d.states[s] + "', '" + d.actions[a] + "')");
          break;
        }
      }
    }
    if (!serial) v.push_back("seriality: state '" + d.states[s] + "' has no applicable action");
  }
  return v;
}

std::optional<FiniteMemoryPlan::Rule> FiniteMemoryPlan::rule(int m, int s) const {
  auto it = rules.find({m, s});
  if (it == rules.end()) return std::nullopt;
  return it->second;
}

namespace {

// Walks the reachable (state, memory) pairs; calls `on_missing` for pairs
// without a usable rule and skips their successors.
template <typename Visit, typename Missing>
void walk(const PlanningDomain& d, const FiniteMemoryPlan& p, Visit visit, Missing on_missing) {
  const int ns = static_cast<int>(d.num_states());
  std::vector<char> seen(static_cast<std::size_t>(ns) * p.memory.size(), 0);
  std::deque<std::pair<int, int>> queue;
  auto push = [&](int s, int m) {
    auto k = static_cast<std::size_t>(m) * ns + s;
    if (seen[k]) return;
    seen[k] = 1;
    queue.emplace_back(s, m);
  };
  push(d.init, p.initial);
  while (!queue.empty()) {
    auto [s, m] = queue.front();
    queue.pop_front();
    auto r = p.rule(m, s);
    if (!r) {
      on_missing(s, m, "undefined output/update");
      continue;
    }
    if (r->action < 0 || r->action >= static_cast<int>(d.num_actions()) ||
        !d.applicable(s, r->action)) {
      on_missing(s, m, "inapplicable action");
      continue;
    }
    if (r->next < 0 || r->next >= static_cast<int>(p.memory.size())) {
      on_missing(s, m, "memory out of range");
      continue;
    }
    visit(s, m, *r);
    for (int t : d.successors(s, r->action)) push(t, r->next);
  }
}

}  // namespace

std::vector<std::string> validate_plan(const PlanningDomain& d, const FiniteMemoryPlan& p) {
  std::vector<std::string> v;
  if (p.memory.empty()) {
    v.push_back("memory: plan has no memory states");
    return v;
  }
  if (p.initial < 0 || p.initial >= static_cast<int>(p.memory.size())) {
    v.push_back("memory: initial memory out of range");
    return v;
  }
  walk(
      d, p, [](int, int, const FiniteMemoryPlan::Rule&) {},
      [&](int s, int m, const char* why) {
        v.push_back(std::string(why) + " at (" + p.memory[m] + ", " + d.states[s] + ")");
      });
  return v;
}

ExecutionGraph product(const PlanningDomain& d, const FiniteMemoryPlan& p) {
  auto problems = validate_plan(d, p);
  if (!problems.empty()) throw Error("plan/domain mismatch: " + problems.front());
  ExecutionGraph g;
  const std::size_t ns = d.num_states();
  std::vector<int> index(ns * p.memory.size(), -1);
  auto id = [&](int s, int m) -> int {
    auto k = static_cast<std::size_t>(m) * ns + static_cast<std::size_t>(s);
    if (index[k] < 0) {
      index[k] = static_cast<int>(g.nodes.size());
      auto r = p.rule(m, s);
      g.nodes.push_back({s, m, r->action});
      g.labels.push_back(d.labels[s]);
      g.succ.emplace_back();
    }
    return index[k];
  };
  g.root = id(d.init, p.initial);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    ExecNode n = g.nodes[i];
    int next = p.rule(n.memory, n.state)->next;
    std::vector<int> out;
    for (int t : d.successors(n.state, n.action)) out.push_back(id(t, next));
    g.succ[i] = std::move(out);
  }
  return g;
}

FiniteMemoryPlan lowest_action_plan(const PlanningDomain& d) {
  FiniteMemoryPlan p;
  p.memory = {"m0"};
  for (int s = 0; s < static_cast<int>(d.num_states()); ++s) {
    auto acts = d.applicable_actions(s);
    if (!acts.empty()) p.set(0, s, acts.front(), 0);
  }
  return p;
}

}  // namespace aeltl
