#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aeltl/ltl.hpp"

namespace aeltl {

// Named formula over the domain atoms, usable in goals by name.
struct Definition {
  std::string name;
  Formula formula;
};

// Labeled nondeterministic transition system. Transitions are stored densely
// as succ[state * num_actions + action]; an empty tuple means inapplicable.
struct PlanningDomain {
  std::vector<std::string> states;
  int init = 0;
  std::vector<std::string> actions;
  Vocabulary atoms;
  std::vector<Letter> labels;
  std::vector<std::vector<int>> succ;
  std::vector<Definition> definitions;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_actions() const { return actions.size(); }
  const std::vector<int>& successors(int s, int a) const {
    return succ[static_cast<std::size_t>(s) * actions.size() + static_cast<std::size_t>(a)];
  }
  std::vector<int>& successors(int s, int a) {
    return succ[static_cast<std::size_t>(s) * actions.size() + static_cast<std::size_t>(a)];
  }
  bool applicable(int s, int a) const { return !successors(s, a).empty(); }
  std::vector<int> applicable_actions(int s) const;

  int state_index(std::string_view name) const;
  int action_index(std::string_view name) const;

  // The arity set: all successor-tuple lengths that occur.
  std::vector<int> arities() const;

  // Empty domain with the given states/actions/atoms and no transitions.
  static PlanningDomain make(std::vector<std::string> states, std::vector<std::string> actions,
                             Vocabulary atoms);
};

// Human-readable invariant violations; empty iff the domain is well formed.
// Reported kinds include "seriality" and "unordered successors".
std::vector<std::string> validate(const PlanningDomain& d);

// Line-based text format:
//   states: s0 s1 ...
//   init: s0
//   atoms: p q          (optional; labels declare atoms implicitly)
//   label s0: p q
//   action go: s0 -> s1 s2 ; s1 -> s0
//   define both: p & q   (named formula over declared atoms)
// Unsorted successor lists are sorted and reported through `warnings`.
PlanningDomain parse_domain(std::string_view text, std::vector<std::string>* warnings = nullptr);
std::string write_domain(const PlanningDomain& d);

// Memory machine: at (memory m, state s) do `action` and move to `next`.
struct FiniteMemoryPlan {
  struct Rule {
    int action;
    int next;
    friend bool operator==(const Rule&, const Rule&) = default;
  };

  std::vector<std::string> memory;
  int initial = 0;
  std::map<std::pair<int, int>, Rule> rules;

  std::optional<Rule> rule(int m, int s) const;
  void set(int m, int s, int action, int next) { rules[{m, s}] = Rule{action, next}; }
};

// Plan file format: `memory: m0 m1`, `initial: m0`, `at m0 s0: do go goto m1`.
FiniteMemoryPlan parse_plan(std::string_view text, const PlanningDomain& d);
std::string write_plan(const FiniteMemoryPlan& p, const PlanningDomain& d);

// Violations of the plan invariants relative to the domain.
std::vector<std::string> validate_plan(const PlanningDomain& d, const FiniteMemoryPlan& p);

struct ExecNode {
  int state;
  int memory;
  int action;
  friend bool operator==(const ExecNode&, const ExecNode&) = default;
};

// Reachable product of domain and plan, nodes in breadth-first discovery order.
struct ExecutionGraph {
  std::vector<ExecNode> nodes;
  std::vector<std::vector<int>> succ;
  std::vector<Letter> labels;
  int root = 0;

  std::size_t size() const { return nodes.size(); }
};

ExecutionGraph product(const PlanningDomain& d, const FiniteMemoryPlan& p);

// Generators.
PlanningDomain gen_blocks_world();
PlanningDomain gen_binary_tree();
PlanningDomain gen_realizability(const std::vector<std::string>& sigma);
PlanningDomain gen_single_state(const std::vector<std::string>& label,
                                std::size_t num_actions = 1);

// The history-dependent blocks-world plan: build B on A, then C on B, take
// it down again, and wait forever; any failure falls back to waiting.
FiniteMemoryPlan blocks_world_plan(const PlanningDomain& blocks);
// Memoryless plan choosing the lowest applicable action everywhere.
FiniteMemoryPlan lowest_action_plan(const PlanningDomain& d);

}  // namespace aeltl
