#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "aeltl/domain.hpp"
#include "aeltl/ltl.hpp"
#include "aeltl/quantifier.hpp"

namespace aeltl {

// Test-time ground truth that avoids automata and games entirely: formulas
// are evaluated with eval_lasso on enumerated lassos of the execution graph.

struct OracleBounds {
  std::size_t lasso_length = 10;       // stem + loop nodes per enumerated lasso
  std::size_t max_histories = 100'000;  // history classes before giving up
};

// Lasso length from the sufficiency rule |nodes| * |closure(f)|. Usually far
// too large to enumerate.
OracleBounds sufficient_bounds(const ExecutionGraph& g, const Formula& f);

// Largest lasso length whose enumeration from any node stays under `budget`
// paths.
OracleBounds affordable_bounds(const ExecutionGraph& g, std::size_t budget = 20'000);

// Calls visit(path, loop_start) for every lasso from `from` with at most
// `max_length` nodes: the infinite path is path[0..loop_start) followed by
// path[loop_start..] repeated. Each (path, loop_start) pair occurs once.
void enumerate_lassos(const ExecutionGraph& g, int from, std::size_t max_length,
                      const std::function<void(const std::vector<int>&, std::size_t)>& visit);

// What is left of a formula after reading a history: a disjunction of
// conjunctions of subformulas of its negation normal form. Clauses are
// sorted and no clause contains another; {} is false, {{}} is true.
using Residual = std::vector<std::vector<Formula>>;

Residual residual_of(const Formula& f);
// Residual after reading one more letter (formula progression).
Residual progress(const Residual& r, Letter l);
bool holds(const Residual& r, const LassoWord& w);

// Histories of the graph up to equivalence: two histories are merged when
// they end in the same node with the same residual, so every extension of
// one is an extension of the other with the same truth value. any_true /
// all_true record whether some / every enumerated lasso from the node
// satisfies the residual.
struct HistoryQuotient {
  struct Node {
    int exec;
    Residual residual;
    std::vector<int> succ;
    bool any_true = false;
    bool all_true = true;
  };
  std::vector<Node> nodes;  // nodes[0] is the root history
  bool advisory = true;     // lasso bound below the sufficiency rule
};

HistoryQuotient good_sets_bruteforce(const ExecutionGraph& g, const Formula& f,
                                     const OracleBounds& b);

// Literal reading of the finite-quantifier semantics: A ranges over all
// finite extensions of a history, E over some. Throws Error for the
// infinite quantifiers.
bool check_bruteforce(const ExecutionGraph& g, const Formula& f, Canonical q,
                      const OracleBounds& b);
bool check_bruteforce(const HistoryQuotient& h, Canonical q);

struct PlanEnumerationOptions {
  std::size_t cap = 64;  // bound on |states| * memory * |actions|
};

// All valid plans with at most `memory` memory states, one per class of
// plans equal up to memory renaming and unreachable rules. `visit` returns
// false to stop early. Returns the number of plans visited.
std::size_t enumerate_plans(const PlanningDomain& d, int memory,
                            const std::function<bool(const FiniteMemoryPlan&)>& visit,
                            const PlanEnumerationOptions& o = {});

}  // namespace aeltl
