#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aeltl {

enum class Player : std::uint8_t { kEven, kOdd };

inline Player opponent(Player p) { return p == Player::kEven ? Player::kOdd : Player::kEven; }

// Min-parity game: Even wins a play iff the least priority seen infinitely
// often is even. Terminals have no edges and a declared winner.
struct ParityGame {
  std::vector<Player> owner;
  std::vector<int> priority;
  std::vector<std::vector<int>> succ;
  std::vector<std::optional<Player>> terminal;

  int add_node(Player who, int prio);
  int add_terminal(Player winner);
  void add_edge(int from, int to) { succ[from].push_back(to); }

  std::size_t size() const { return owner.size(); }
  int max_priority() const;
  int index() const;
  bool is_terminal(int v) const { return terminal[v].has_value(); }
  // Empty iff every non-terminal node has a successor and terminals have none.
  std::vector<std::string> validate() const;
};

struct Solution {
  std::vector<Player> winner;
  // Chosen successor for nodes whose owner wins them; -1 elsewhere.
  std::vector<int> strategy;

  bool even_wins(int v) const { return winner[v] == Player::kEven; }
  std::vector<int> region(Player p) const;
};

// Zielonka's recursive algorithm. Among winning moves the solver prefers
// successors in edge order, so results are deterministic.
Solution solve(const ParityGame& g);

enum class Mode { kExists, kForall };

// One-player parity: kExists -> nodes with some even-parity infinite path;
// kForall -> nodes all of whose infinite paths are even. Returns a 0/1 mask.
std::vector<char> one_player_good(const std::vector<std::vector<int>>& succ,
                                  const std::vector<int>& priority, Mode mode);

// Per-node event for the acceptance gadgets. The event of a node applies to
// every step entering it, so edge events are expressed by subdividing edges.
enum class Event : std::uint8_t {
  kPlain,    // ordinary step
  kGood,     // the Buchi event
  kIdle,     // step that counts as even when it recurs without kPlain (and-gadget)
  kNeutral,  // bookkeeping node; its priority never decides a play
};

struct Gadget {
  ParityGame game;
  std::vector<int> base;     // gadget node -> arena node
  std::vector<int> tracker;  // gadget node -> tracked minimum (k + 1 = none yet)
  std::vector<int> roots;    // gadget nodes for the requested arena roots
};

// Even wins iff kGood occurs infinitely often and the least lambda seen
// infinitely often is even (plays ending in kIdle steps also go to Even).
// Tracks m = least lambda since the last good event; a good step emits m + 2,
// plain steps emit 2k + 3, idle steps 2k + 4, neutral steps 2k + 5.
Gadget parity_and_buchi(const ParityGame& arena, const std::vector<int>& lambda,
                        const std::vector<Event>& event, const std::vector<int>& roots);

// Even wins iff kGood occurs infinitely often or the least lambda seen
// infinitely often is even. Good steps get 0, others lambda + 2.
ParityGame parity_or_buchi(const ParityGame& arena, const std::vector<int>& lambda,
                           const std::vector<Event>& event);

std::string dump(const ParityGame& g, const Solution* s = nullptr);

}  // namespace aeltl
