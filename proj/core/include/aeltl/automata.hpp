#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aeltl/ltl.hpp"

namespace aeltl {

// Automata read "local" letters: bit b of a local letter is vocabulary atom
// atoms[b]. project() maps a vocabulary letter to the local alphabet.
struct LocalAlphabet {
  std::vector<int> atoms;

  std::size_t bits() const { return atoms.size(); }
  std::size_t size() const { return std::size_t{1} << atoms.size(); }
  unsigned project(Letter l) const;
};

struct BuchiAutomaton {
  LocalAlphabet alphabet;
  int num_states = 0;
  std::vector<int> initial;
  // delta[q * alphabet.size() + letter]: sorted successor states.
  std::vector<std::vector<int>> delta;
  std::vector<char> accepting;

  const std::vector<int>& next(int q, unsigned letter) const {
    return delta[static_cast<std::size_t>(q) * alphabet.size() + letter];
  }
  bool deterministic() const;
};

// Deterministic, total; acceptance = minimal priority seen infinitely often is even.
struct ParityWordAutomaton {
  LocalAlphabet alphabet;
  int num_states = 0;
  int initial = 0;
  std::vector<int> delta;
  std::vector<int> priority;

  int next(int q, unsigned letter) const {
    return delta[static_cast<std::size_t>(q) * alphabet.size() + letter];
  }
  int step(int q, Letter l) const { return next(q, alphabet.project(l)); }
  int max_priority() const;
  // Number of distinct priorities in use.
  int index() const;
};

// Tableau construction: generalized Buchi from formula expansion, then
// counter degeneralization and pruning of states without accepting futures.
BuchiAutomaton ltl_to_nbw(const Formula& f);

// Safra-tree determinization with compact node names (priority 2i for the
// youngest-named green node i, 2i-1 for the youngest removed). Deterministic
// inputs are embedded directly with priorities {0, 1}.
ParityWordAutomaton nbw_to_dpw(const BuchiAutomaton& b);

// Merge states with identical priority and successor classes.
ParityWordAutomaton minimize(const ParityWordAutomaton& d);

// nbw_to_dpw(ltl_to_nbw(f)) followed by minimize().
ParityWordAutomaton ltl_to_dpw(const Formula& f);

bool nbw_accepts(const BuchiAutomaton& b, const LassoWord& w);
bool dpw_run_lasso(const ParityWordAutomaton& d, const LassoWord& w);

enum class Shape { kFw, kFGw, kGFw };

std::string_view to_string(Shape s);

// theta(w) -> f with theta = F w, F G w or G F w; w is the atom `w_index`.
Formula psi_formula(Shape shape, const Formula& f, int w_index);
ParityWordAutomaton dpw_for_psi(Shape shape, const Formula& f, int w_index);

// Text digraph dumps with stable ordering. `names` resolves atom indices.
std::string dump(const BuchiAutomaton& b, const Vocabulary& names);
std::string dump(const ParityWordAutomaton& d, const Vocabulary& names);

}  // namespace aeltl
