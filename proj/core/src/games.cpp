#include "aeltl/games.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "aeltl/error.hpp"

namespace aeltl {

int ParityGame::add_node(Player who, int prio) {
  owner.push_back(who);
  priority.push_back(prio);
  succ.emplace_back();
  terminal.emplace_back();
  return static_cast<int>(owner.size()) - 1;
}

int ParityGame::add_terminal(Player winner) {
  int v = add_node(winner, winner == Player::kEven ? 0 : 1);
  terminal[v] = winner;
  return v;
}

int ParityGame::max_priority() const {
  int m = 0;
  for (std::size_t v = 0; v < size(); ++v)
    if (!is_terminal(static_cast<int>(v))) m = std::max(m, priority[v]);
  return m;
}

int ParityGame::index() const {
  std::vector<int> p;
  for (std::size_t v = 0; v < size(); ++v)
    if (!is_terminal(static_cast<int>(v))) p.push_back(priority[v]);
  std::sort(p.begin(), p.end());
  return static_cast<int>(std::unique(p.begin(), p.end()) - p.begin());
}

std::vector<std::string> ParityGame::validate() const {
  std::vector<std::string> v;
  for (std::size_t n = 0; n < size(); ++n) {
    if (terminal[n] && !succ[n].empty())
      v.push_back("terminal node " + std::to_string(n) + " has edges");
    if (!terminal[n] && succ[n].empty())
      v.push_back("node " + std::to_string(n) + " has no successor");
    if (priority[n] < 0) v.push_back("node " + std::to_string(n) + " has negative priority");
    for (int t : succ[n])
      if (t < 0 || t >= static_cast<int>(size()))
        v.push_back("node " + std::to_string(n) + " has dangling edge");
  }
  return v;
}

std::vector<int> Solution::region(Player p) const {
  std::vector<int> out;
  for (std::size_t v = 0; v < winner.size(); ++v)
    if (winner[v] == p) out.push_back(static_cast<int>(v));
  return out;
}

namespace {

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g) : g_(g), n_(static_cast<int>(g.size())) {
    succ_.resize(n_);
    pred_.resize(n_);
    prio_.resize(n_);
    for (int v = 0; v < n_; ++v) {
      // Terminals become self-loops with a priority that decides for the winner.
      if (g.terminal[v]) {
        succ_[v] = {v};
        prio_[v] = *g.terminal[v] == Player::kEven ? 0 : 1;
      } else {
        succ_[v] = g.succ[v];
        prio_[v] = g.priority[v];
      }
      for (int t : succ_[v]) pred_[t].push_back(v);
    }
    for (auto& p : pred_) {
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    in_.assign(n_, 0);
    attr_.assign(n_, 0);
    count_.assign(n_, 0);
    sol_.winner.assign(n_, Player::kEven);
    sol_.strategy.assign(n_, -1);
  }

  Solution run() {
    std::vector<int> all(n_);
    for (int v = 0; v < n_; ++v) all[v] = v;
    solve(all);
    for (int v = 0; v < n_; ++v) {
      if (g_.terminal[v] || g_.owner[v] != sol_.winner[v]) sol_.strategy[v] = -1;
    }
    return std::move(sol_);
  }

 private:
  Player owner(int v) const { return g_.terminal[v] ? *g_.terminal[v] : g_.owner[v]; }

  int mark(const std::vector<int>& s) {
    ++stamp_;
    for (int v : s) in_[v] = stamp_;
    return stamp_;
  }

  // Attractor for `who` to `target` inside the subgame stamped `sub`.
  // Writes attracting moves for `who`'s nodes into the strategy.
  std::vector<int> attractor(int sub, const std::vector<int>& target, Player who) {
    ++attr_stamp_;
    std::vector<int> out;
    std::deque<int> queue;
    for (int v : target) {
      attr_[v] = attr_stamp_;
      out.push_back(v);
      queue.push_back(v);
    }
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      for (int v : pred_[t]) {
        if (in_[v] != sub || attr_[v] == attr_stamp_) continue;
        if (owner(v) == who) {
          // Choose before marking v so a self-loop is never picked.
          sol_.strategy[v] = first_in(v, sub, true);
          attr_[v] = attr_stamp_;
          out.push_back(v);
          queue.push_back(v);
        } else {
          if (count_stamp_.size() != static_cast<std::size_t>(n_)) count_stamp_.assign(n_, 0);
          if (count_stamp_[v] != attr_stamp_) {
            count_stamp_[v] = attr_stamp_;
            count_[v] = 0;
            for (int x : succ_[v])
              if (in_[x] == sub) ++count_[v];
          }
          if (--count_[v] == 0) {
            attr_[v] = attr_stamp_;
            out.push_back(v);
            queue.push_back(v);
          }
        }
      }
    }
    return out;
  }

  // First successor of v inside the subgame (and inside the current
  // attractor when `in_attr`).
  int first_in(int v, int sub, bool in_attr) const {
    for (int x : succ_[v])
      if (in_[x] == sub && (!in_attr || attr_[x] == attr_stamp_)) return x;
    return -1;
  }

  void solve(const std::vector<int>& s) {
    if (s.empty()) return;
    int p = prio_[s.front()];
    for (int v : s) p = std::min(p, prio_[v]);
    const Player a = p % 2 == 0 ? Player::kEven : Player::kOdd;
    const Player b = opponent(a);

    int sub = mark(s);
    std::vector<int> top;
    for (int v : s)
      if (prio_[v] == p) top.push_back(v);
    std::vector<int> attr_a = attractor(sub, top, a);
    std::vector<int> rest = minus(s, attr_a);
    solve(rest);

    std::vector<int> won_b;
    for (int v : rest)
      if (sol_.winner[v] == b) won_b.push_back(v);

    if (won_b.empty()) {
      sub = mark(s);
      for (int v : attr_a) sol_.winner[v] = a;
      for (int v : top)
        if (owner(v) == a) sol_.strategy[v] = first_in(v, sub, false);
      return;
    }

    sub = mark(s);
    std::vector<int> attr_b = attractor(sub, won_b, b);
    for (int v : attr_b) sol_.winner[v] = b;
    solve(minus(s, attr_b));
  }

  std::vector<int> minus(const std::vector<int>& s, const std::vector<int>& remove) {
    ++attr_stamp_;
    for (int v : remove) attr_[v] = attr_stamp_;
    std::vector<int> out;
    for (int v : s)
      if (attr_[v] != attr_stamp_) out.push_back(v);
    return out;
  }

  const ParityGame& g_;
  int n_;
  std::vector<std::vector<int>> succ_, pred_;
  std::vector<int> prio_;
  std::vector<int> in_, attr_, count_, count_stamp_;
  int stamp_ = 0, attr_stamp_ = 0;
  Solution sol_;
};

}  // namespace

Solution solve(const ParityGame& g) {
  auto problems = g.validate();
  if (!problems.empty()) throw Error("invalid parity game: " + problems.front());
  return Zielonka(g).run();
}

std::vector<char> one_player_good(const std::vector<std::vector<int>>& succ,
                                  const std::vector<int>& priority, Mode mode) {
  ParityGame g;
  const Player who = mode == Mode::kExists ? Player::kEven : Player::kOdd;
  for (std::size_t v = 0; v < succ.size(); ++v) g.add_node(who, priority[v]);
  for (std::size_t v = 0; v < succ.size(); ++v)
    for (int t : succ[v]) g.add_edge(static_cast<int>(v), t);
  Solution s = solve(g);
  std::vector<char> out(succ.size());
  for (std::size_t v = 0; v < succ.size(); ++v) out[v] = s.even_wins(static_cast<int>(v));
  return out;
}

Gadget parity_and_buchi(const ParityGame& arena, const std::vector<int>& lambda,
                        const std::vector<Event>& event, const std::vector<int>& roots) {
  int k = 0;
  for (int l : lambda) k = std::max(k, l);
  const int none = k + 1;
  const int width = k + 2;
  Gadget out;
  std::vector<int> id(arena.size() * static_cast<std::size_t>(width), -1);
  std::vector<std::pair<int, int>> queue;
  auto node = [&](int v, int t) {
    auto key = static_cast<std::size_t>(v) * width + t;
    if (id[key] >= 0) return id[key];
    int g;
    if (arena.terminal[v]) {
      g = out.game.add_terminal(*arena.terminal[v]);
    } else {
      int prio = 0;
      switch (event[v]) {
        case Event::kGood: prio = std::min(t, lambda[v]) + 2; break;
        case Event::kPlain: prio = 2 * k + 3; break;
        case Event::kIdle: prio = 2 * k + 4; break;
        case Event::kNeutral: prio = 2 * k + 5; break;
      }
      g = out.game.add_node(arena.owner[v], prio);
    }
    id[key] = g;
    out.base.push_back(v);
    out.tracker.push_back(t);
    queue.emplace_back(v, t);
    return g;
  };
  for (int r : roots) out.roots.push_back(node(r, none));
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [v, t] = queue[i];
    int g = id[static_cast<std::size_t>(v) * width + t];
    int next_t = t;
    switch (event[v]) {
      case Event::kGood: next_t = none; break;
      case Event::kPlain:
      case Event::kIdle: next_t = std::min(t, lambda[v]); break;
      case Event::kNeutral: break;
    }
    for (int x : arena.succ[v]) {
      int target = node(x, next_t);
      out.game.add_edge(g, target);
    }
  }
  return out;
}

ParityGame parity_or_buchi(const ParityGame& arena, const std::vector<int>& lambda,
                           const std::vector<Event>& event) {
  int top = 2;
  for (std::size_t v = 0; v < arena.size(); ++v) top = std::max(top, lambda[v] + 2);
  const int idle = top % 2 == 0 ? top : top + 1;
  const int neutral = idle + 1;
  ParityGame g = arena;
  for (std::size_t v = 0; v < arena.size(); ++v) {
    if (arena.terminal[v]) continue;
    switch (event[v]) {
      case Event::kGood: g.priority[v] = 0; break;
      case Event::kPlain: g.priority[v] = lambda[v] + 2; break;
      case Event::kIdle: g.priority[v] = idle; break;
      case Event::kNeutral: g.priority[v] = neutral; break;
    }
  }
  return g;
}

std::string dump(const ParityGame& g, const Solution* s) {
  std::ostringstream out;
  out << "game nodes=" << g.size() << " max_priority=" << g.max_priority() << "\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << "n" << v;
    if (g.terminal[v]) {
      out << " terminal winner=" << (*g.terminal[v] == Player::kEven ? "even" : "odd");
    } else {
      out << " owner=" << (g.owner[v] == Player::kEven ? "even" : "odd")
          << " priority=" << g.priority[v] << " ->";
      for (int t : g.succ[v]) out << " n" << t;
    }
    if (s) {
      out << " | won_by=" << (s->winner[v] == Player::kEven ? "even" : "odd");
      if (s->strategy[v] >= 0) out << " move=n" << s->strategy[v];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace aeltl
