#include "aeltl/synth.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <tuple>

#include "aeltl/automata.hpp"
#include "aeltl/error.hpp"

namespace aeltl {

namespace {

// How the tree is constrained once the optional designated-path prefix ends.
enum class Tail {
  kAll,         // every branch satisfies phi
  kPath,        // one designated branch satisfies phi
  kStable,      // AG EXG w with FG w -> phi (or-gadget, good = !w)
  kRecurrent,   // AG EF w with psi (and-gadget, good = w or fresh obligation)
};

struct Construction {
  bool prefix = false;  // designated path first, committing somewhere
  Tail tail = Tail::kAll;
  bool use_w = false;
  std::optional<Shape> shape;
  bool and_gadget = false;
};

Construction construction_for(Canonical c) {
  switch (c) {
    case Canonical::kA: return {false, Tail::kAll, false, std::nullopt, false};
    case Canonical::kE: return {false, Tail::kPath, false, std::nullopt, false};
    case Canonical::kEA: return {true, Tail::kAll, false, std::nullopt, false};
    case Canonical::kAE: return {false, Tail::kStable, false, std::nullopt, false};
    case Canonical::kEAE: return {true, Tail::kStable, false, std::nullopt, false};
    case Canonical::kAEA: return {false, Tail::kRecurrent, true, Shape::kFw, true};
    case Canonical::kAEw: return {false, Tail::kRecurrent, true, Shape::kGFw, true};
    case Canonical::kEAw: return {true, Tail::kRecurrent, true, Shape::kGFw, true};
  }
  throw Error("unknown quantifier");
}

constexpr int kPrefixPhase = 1;
constexpr int kTailPhase = 2;

// Memory handed to every child of a step; together with the child's state it
// determines the child's game node.
struct Memory {
  int q;       // DPA state after the parent
  int phase;   // phase of the step that produced it
  int d;       // designated child state, -1 for none
  int t;       // gadget tracker after the step (0 without tracking)
  bool root;   // the memory before the root node
  auto key() const { return std::tuple(q, phase, d, t, root); }
};

struct EvenKey {
  int s, q, phase, u;
  auto key() const { return std::tuple(s, q, phase, u); }
};

struct OddKey {
  int s, a, q, phase, w, d, u;
  auto key() const { return std::tuple(s, a, q, phase, w, d, u); }
};

struct Choice {
  int a, phase, w, d;
};

class Builder {
 public:
  Builder(const PlanningDomain& d, const Goal& g, const SynthesisOptions& o)
      : d_(d), c_(construction_for(normalize(g.quantifier))), opts_(o) {
    w_index_ = static_cast<int>(d.atoms.size());
    if (c_.use_w) {
      if (w_index_ >= static_cast<int>(kMaxAtoms)) throw Error("no room for the marking atom");
      dpa_ = dpw_for_psi(*c_.shape, g.formula, w_index_);
    } else {
      dpa_ = ltl_to_dpw(g.formula);
    }
    top_ = dpa_.max_priority();
    prefix_lambda_ = top_ % 2 == 1 ? top_ : top_ + 1;
  }

  SynthesisResult run() {
    const int start_phase = c_.prefix ? kPrefixPhase : kTailPhase;
    root_ = even({d_.init, dpa_.initial, start_phase, 0});
    for (std::size_t i = 0; i < pending_.size(); ++i) expand(pending_[i]);

    SynthesisResult r;
    std::vector<int> roots{root_};
    Gadget gadget;
    if (c_.and_gadget) {
      gadget = parity_and_buchi(arena_, lambda_, event_, roots);
    } else {
      gadget.game = parity_or_buchi(arena_, lambda_, event_);
      gadget.roots = roots;
      for (std::size_t v = 0; v < arena_.size(); ++v) {
        gadget.base.push_back(static_cast<int>(v));
        gadget.tracker.push_back(0);
      }
    }
    r.solution = solve(gadget.game);
    r.game_nodes = gadget.game.size();
    r.parity_index = gadget.game.index();
    r.solvable = r.solution.even_wins(gadget.roots[0]);
    if (r.solvable) {
      r.plan = extract(gadget, r.solution);
    } else {
      r.odd_region = r.solution.region(Player::kOdd);
    }
    r.game = std::move(gadget.game);
    return r;
  }

 private:
  Letter letter(int s, int w) const {
    return d_.labels[s] | (w ? Letter{1} << w_index_ : Letter{0});
  }

  int add(Player who, int lambda, Event ev) {
    if (arena_.size() >= opts_.max_game_nodes) {
      throw Error("game size overflow: more than " + std::to_string(opts_.max_game_nodes) +
                  " nodes");
    }
    int v = arena_.add_node(who, 0);
    lambda_.push_back(lambda);
    event_.push_back(ev);
    return v;
  }

  int terminal() {
    if (terminal_ < 0) {
      terminal_ = arena_.add_terminal(Player::kEven);
      lambda_.push_back(0);
      event_.push_back(Event::kNeutral);
    }
    return terminal_;
  }

  int even(const EvenKey& k) {
    auto [it, fresh] = even_ids_.try_emplace(k.key(), -1);
    if (fresh) {
      it->second = add(Player::kEven, 0, Event::kNeutral);
      even_keys_.emplace(it->second, k);
      pending_.push_back(it->second);
    }
    return it->second;
  }

  // Game node for a child in state s under parent memory m; -1 never occurs
  // (off-path children go to the Even terminal).
  int resolve(int s, const Memory& m) {
    if (m.root) return even({s, m.q, c_.prefix ? kPrefixPhase : kTailPhase, 0});
    if (m.phase == kPrefixPhase) {
      return s == m.d ? even({s, m.q, kPrefixPhase, 0}) : terminal();
    }
    switch (c_.tail) {
      case Tail::kAll: return even({s, m.q, kTailPhase, 0});
      case Tail::kPath: return s == m.d ? even({s, m.q, kTailPhase, 0}) : terminal();
      case Tail::kStable:
      case Tail::kRecurrent: return even({s, m.q, kTailPhase, s == m.d ? 1 : 0});
    }
    return terminal();
  }

  std::vector<Choice> choices(const EvenKey& k) const {
    std::vector<Choice> out;
    for (int a : d_.applicable_actions(k.s)) {
      const auto& succ = d_.successors(k.s, a);
      // Commit first so that shorter prefixes win ties.
      const int u = k.phase == kPrefixPhase ? 0 : k.u;
      switch (c_.tail) {
        case Tail::kAll: out.push_back({a, kTailPhase, 0, -1}); break;
        case Tail::kPath:
          for (int t : succ) out.push_back({a, kTailPhase, 0, t});
          break;
        case Tail::kStable:
          for (int w = u ? 1 : 0; w <= 1; ++w)
            for (int t : succ) out.push_back({a, kTailPhase, w, t});
          break;
        case Tail::kRecurrent:
          for (int t : succ) out.push_back({a, kTailPhase, 0, t});
          out.push_back({a, kTailPhase, 1, -1});
          break;
      }
      if (k.phase == kPrefixPhase)
        for (int t : succ) out.push_back({a, kPrefixPhase, 0, t});
    }
    return out;
  }

  void expand(int v) {
    const EvenKey k = even_keys_.at(v);
    for (const Choice& ch : choices(k)) {
      const int q = dpa_.step(k.q, letter(k.s, ch.w));
      const int u = ch.phase == kPrefixPhase || k.phase == kPrefixPhase ? 0 : k.u;
      OddKey ok{k.s, ch.a, q, ch.phase, ch.w, ch.d, c_.tail == Tail::kRecurrent ? u : 0};
      auto [it, fresh] = odd_ids_.try_emplace(ok.key(), -1);
      if (fresh) {
        int lambda = dpa_.priority[q];
        Event ev = Event::kPlain;
        if (ch.phase == kPrefixPhase) {
          lambda = prefix_lambda_;
        } else if (c_.tail == Tail::kStable) {
          ev = ch.w ? Event::kPlain : Event::kGood;
        } else if (c_.tail == Tail::kRecurrent) {
          ev = ch.w || !ok.u ? Event::kGood : Event::kPlain;
        }
        const int o = add(Player::kOdd, lambda, ev);
        it->second = o;
        odd_keys_.emplace(o, ok);
        const Memory m{q, ch.phase, ch.d, 0, false};
        for (int t : d_.successors(k.s, ch.a)) arena_.add_edge(o, resolve(t, m));
      }
      arena_.add_edge(v, it->second);
    }
  }

  FiniteMemoryPlan extract(const Gadget& g, const Solution& s) {
    std::map<std::pair<int, int>, int> gadget_id;
    for (std::size_t x = 0; x < g.game.size(); ++x)
      gadget_id[{g.base[x], g.tracker[x]}] = static_cast<int>(x);
    const int none = g.tracker.empty() ? 0 : g.tracker[static_cast<std::size_t>(g.roots[0])];

    FiniteMemoryPlan plan;
    std::map<decltype(Memory{}.key()), int> mem_ids;
    std::vector<Memory> mems;
    auto mem_id = [&](const Memory& m) {
      auto [it, fresh] = mem_ids.try_emplace(m.key(), static_cast<int>(mems.size()));
      if (fresh) {
        mems.push_back(m);
        plan.memory.push_back("m" + std::to_string(it->second));
      }
      return it->second;
    };
    int free_mem = -1;
    auto free_id = [&] {
      if (free_mem < 0) {
        free_mem = static_cast<int>(plan.memory.size());
        plan.memory.push_back("m" + std::to_string(free_mem));
        mems.push_back(Memory{-1, 0, -1, 0, false});
        for (int st = 0; st < static_cast<int>(d_.num_states()); ++st) {
          auto acts = d_.applicable_actions(st);
          if (!acts.empty()) plan.set(free_mem, st, acts.front(), free_mem);
        }
      }
      return free_mem;
    };

    plan.initial = mem_id(Memory{dpa_.initial, 0, -1, none, true});
    std::deque<std::pair<int, int>> queue{{plan.initial, d_.init}};
    std::map<std::pair<int, int>, bool> seen{{{plan.initial, d_.init}, true}};
    while (!queue.empty()) {
      auto [m, st] = queue.front();
      queue.pop_front();
      const Memory mem = mems[static_cast<std::size_t>(m)];
      const int v = resolve(st, mem);
      int next;
      int action;
      if (v == terminal_) {
        auto acts = d_.applicable_actions(st);
        action = acts.front();
        next = free_id();
      } else {
        const int gv = gadget_id.at({v, mem.t});
        const int go = s.strategy[gv];
        if (go < 0) throw Error("internal: strategy undefined on a winning node");
        const OddKey& ok = odd_keys_.at(g.base[go]);
        const int first = g.game.succ[go].front();
        const int t = g.tracker[first];
        action = ok.a;
        next = mem_id(Memory{ok.q, ok.phase, ok.d, t, false});
      }
      plan.set(m, st, action, next);
      if (next == free_mem) continue;
      for (int t : d_.successors(st, action))
        if (seen.emplace(std::pair(next, t), true).second) queue.emplace_back(next, t);
    }
    return plan;
  }

  const PlanningDomain& d_;
  Construction c_;
  SynthesisOptions opts_;
  int w_index_ = 0;
  ParityWordAutomaton dpa_;
  int top_ = 0;
  int prefix_lambda_ = 1;

  ParityGame arena_;
  std::vector<int> lambda_;
  std::vector<Event> event_;
  std::map<std::tuple<int, int, int, int>, int> even_ids_;
  std::map<int, EvenKey> even_keys_;
  std::map<decltype(OddKey{}.key()), int> odd_ids_;
  std::map<int, OddKey> odd_keys_;
  std::vector<int> pending_;
  int terminal_ = -1;
  int root_ = -1;
};

}  // namespace

SynthesisResult synthesize(const PlanningDomain& d, const Goal& g, const SynthesisOptions& o) {
  auto problems = validate(d);
  if (!problems.empty()) throw Error("invalid domain: " + problems.front());
  require_atoms(g.formula, d.atoms);
  return Builder(d, g, o).run();
}

}  // namespace aeltl
