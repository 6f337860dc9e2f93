#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "aeltl/automata.hpp"
#include "aeltl/domain.hpp"
#include "aeltl/games.hpp"
#include "aeltl/ltl.hpp"
#include "aeltl/quantifier.hpp"

namespace aeltl {

struct Goal {
  PathQuantifier quantifier;
  Formula formula;
};

// "<quantifier> . <ltl>", e.g. "AE . F tower". Errors name the failing part.
Goal parse_goal(std::string_view text, const Vocabulary& atoms);
// As above, also expanding the domain's named definitions.
Goal parse_goal(std::string_view text, const PlanningDomain& d);
std::string to_string(const Goal& g);

// Execution graph x DPA(phi). Node v pairs exec node `exec[v]` with the DPA
// state reached after reading that node's label.
struct ProductGraph {
  std::vector<int> exec;
  std::vector<int> dpa;
  std::vector<std::vector<int>> succ;
  std::vector<int> priority;
  int root = 0;

  std::size_t size() const { return exec.size(); }
};

ProductGraph make_product(const ExecutionGraph& g, const ParityWordAutomaton& dpa);

// Nodes reachable from `from` (reflexive), as a 0/1 mask.
std::vector<char> reachable_from(const std::vector<std::vector<int>>& succ, int from);

struct CheckResult {
  enum class Witness { kNone, kLasso, kNodes };

  bool verdict = false;
  Canonical canonical = Canonical::kA;
  Witness witness_kind = Witness::kNone;
  // Execution-graph nodes: the commit node(s), a counterexample node, or the
  // reachable part of Even's region for the infinite quantifiers.
  std::vector<int> nodes;
  // Execution-graph lasso: stem then loop (loop nonempty when kLasso).
  std::vector<int> stem;
  std::vector<int> loop;
};

// Decides goals on one execution graph; caches the DPA of the formula.
class Checker {
 public:
  explicit Checker(Formula f);

  CheckResult check(const ExecutionGraph& g, Canonical q) const;
  // Evaluates a raw quantifier word after collapsing repeated letters only;
  // finite words of any length are handled by direct recursion.
  bool check_word(const ExecutionGraph& g, const PathQuantifier& raw) const;

  const ParityWordAutomaton& dpa() const { return dpa_; }

 private:
  Formula formula_;
  ParityWordAutomaton dpa_;
};

CheckResult check(const PlanningDomain& d, const FiniteMemoryPlan& p, const Goal& g);

// Formula atoms must be the vocabulary's atoms at the same indices.
void require_atoms(const Formula& f, const Vocabulary& atoms);

// The turn game for (AE)^w / (EA)^w over a product, before and after the
// acceptance gadget is applied; exposed for tests.
struct TurnGame {
  ParityGame arena;
  std::vector<int> lambda;
  std::vector<Event> event;
  std::vector<int> product_node;  // arena node -> product node (-1 for terminals)
  int root = 0;                   // arena node of the first turn
  Gadget gadget;
};
TurnGame build_turn_game(const ProductGraph& p, const std::vector<char>& good_a, bool a_first);

inline constexpr std::array<std::string_view, 5> kStrictnessFormulas = {"F p", "G F p", "F G p",
                                                                        "G !q", "X p"};

// Rows in kAllCanonical order, columns in kStrictnessFormulas order, on the
// binary-tree domain with its unique plan.
std::array<std::array<bool, 5>, 8> strictness_table();

}  // namespace aeltl
