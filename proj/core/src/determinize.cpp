#include <algorithm>
#include <map>

#include "aeltl/automata.hpp"

namespace aeltl {

namespace {

using Bits = std::vector<std::uint64_t>;

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

// Safra tree with compact names: node i has name i + 1 and parent[i] < i
// (root has parent -1). Index order is age order.
struct Tree {
  std::vector<int> parent;
  std::vector<Bits> label;

  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> k{parent.size()};
    for (int p : parent) k.push_back(static_cast<std::uint64_t>(p + 1));
    for (const auto& l : label) k.insert(k.end(), l.begin(), l.end());
    return k;
  }
};

class Safra {
 public:
  explicit Safra(const BuchiAutomaton& b) : b_(b), words_((b.num_states + 63) / 64) {
    accepting_.assign(words_, 0);
    for (int q = 0; q < b.num_states; ++q)
      if (b.accepting[q]) accepting_[q / 64] |= std::uint64_t{1} << (q % 64);
  }

  Tree initial() const {
    Tree t;
    Bits init(words_, 0);
    for (int q : b_.initial) init[q / 64] |= std::uint64_t{1} << (q % 64);
    if (any(init)) {
      t.parent.push_back(-1);
      t.label.push_back(init);
    }
    return t;
  }

  int quiet_priority() const { return 2 * b_.num_states + 1; }

  // One deterministic step; returns the successor tree and the emitted priority.
  std::pair<Tree, int> step(const Tree& t, unsigned letter) const {
    struct Node {
      int parent;
      Bits label;
      bool alive = true;
      bool green = false;
      std::vector<int> children;
    };
    const int old = static_cast<int>(t.parent.size());
    std::vector<Node> nodes;
    for (int i = 0; i < old; ++i) nodes.push_back({t.parent[i], t.label[i], true, false, {}});
    for (int i = 1; i < old; ++i) nodes[nodes[i].parent].children.push_back(i);

    // Spawn a youngest child holding the accepting part of every label.
    for (int i = 0; i < old; ++i) {
      Bits acc(words_);
      for (std::size_t w = 0; w < words_; ++w) acc[w] = nodes[i].label[w] & accepting_[w];
      if (any(acc)) {
        nodes.push_back({i, std::move(acc), true, false, {}});
        nodes[i].children.push_back(static_cast<int>(nodes.size()) - 1);
      }
    }
    for (auto& n : nodes) n.label = post(n.label, letter);

    // Horizontal merge: states stay with the oldest sibling; children stay
    // inside their parent.
    std::vector<int> order;
    if (!nodes.empty()) order.push_back(0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      Node& v = nodes[order[k]];
      Bits taken(words_, 0);
      for (int c : v.children) {
        Bits& l = nodes[c].label;
        for (std::size_t w = 0; w < words_; ++w) {
          l[w] &= v.label[w] & ~taken[w];
          taken[w] |= l[w];
        }
        order.push_back(c);
      }
    }
    for (auto& n : nodes)
      if (!any(n.label)) n.alive = false;

    // Vertical merge: a node covered by its children flashes green.
    for (int v : order) {
      Node& n = nodes[v];
      if (!n.alive) continue;
      Bits covered(words_, 0);
      bool has_child = false;
      for (int c : n.children) {
        if (!nodes[c].alive) continue;
        has_child = true;
        for (std::size_t w = 0; w < words_; ++w) covered[w] |= nodes[c].label[w];
      }
      if (has_child && covered == n.label) {
        n.green = true;
        kill_below(nodes, v);
      }
    }

    int priority = quiet_priority();
    for (int i = 0; i < old; ++i) {
      if (!nodes[i].alive) priority = std::min(priority, 2 * (i + 1) - 1);
      else if (nodes[i].green) priority = std::min(priority, 2 * (i + 1));
    }

    Tree out;
    std::vector<int> rename(nodes.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].alive) continue;
      rename[i] = static_cast<int>(out.parent.size());
      out.parent.push_back(nodes[i].parent < 0 ? -1 : rename[nodes[i].parent]);
      out.label.push_back(nodes[i].label);
    }
    return {std::move(out), priority};
  }

 private:
  template <typename Nodes>
  static void kill_below(Nodes& nodes, int v) {
    for (int c : nodes[v].children) {
      if (!nodes[c].alive) continue;
      nodes[c].alive = false;
      kill_below(nodes, c);
    }
  }

  Bits post(const Bits& s, unsigned letter) const {
    Bits out(words_, 0);
    for (int q = 0; q < b_.num_states; ++q) {
      if (!(s[q / 64] >> (q % 64) & 1)) continue;
      for (int t : b_.next(q, letter)) out[t / 64] |= std::uint64_t{1} << (t % 64);
    }
    return out;
  }

  const BuchiAutomaton& b_;
  std::size_t words_;
  Bits accepting_;
};

ParityWordAutomaton embed_deterministic(const BuchiAutomaton& b) {
  ParityWordAutomaton d;
  d.alphabet = b.alphabet;
  const std::size_t sigma = b.alphabet.size();
  const int sink = b.num_states;
  d.num_states = b.num_states + 1;
  d.initial = b.initial.empty() ? sink : b.initial.front();
  d.delta.assign(static_cast<std::size_t>(d.num_states) * sigma, sink);
  d.priority.assign(d.num_states, 1);
  for (int q = 0; q < b.num_states; ++q) {
    d.priority[q] = b.accepting[q] ? 0 : 1;
    for (unsigned l = 0; l < sigma; ++l) {
      const auto& t = b.next(q, l);
      if (!t.empty()) d.delta[static_cast<std::size_t>(q) * sigma + l] = t.front();
    }
  }
  return d;
}

// Keep only states reachable from the initial one, in BFS order.
ParityWordAutomaton reachable(const ParityWordAutomaton& d) {
  const std::size_t sigma = d.alphabet.size();
  std::vector<int> id(d.num_states, -1), order{d.initial};
  id[d.initial] = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (unsigned l = 0; l < sigma; ++l) {
      int t = d.next(order[k], l);
      if (id[t] < 0) {
        id[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  ParityWordAutomaton out;
  out.alphabet = d.alphabet;
  out.num_states = static_cast<int>(order.size());
  out.initial = 0;
  out.delta.resize(order.size() * sigma);
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.priority.push_back(d.priority[order[k]]);
    for (unsigned l = 0; l < sigma; ++l) out.delta[k * sigma + l] = id[d.next(order[k], l)];
  }
  return out;
}

}  // namespace

ParityWordAutomaton nbw_to_dpw(const BuchiAutomaton& b) {
  if (b.deterministic()) return reachable(embed_deterministic(b));

  Safra safra(b);
  const std::size_t sigma = b.alphabet.size();
  std::map<std::vector<std::uint64_t>, int> tree_ids;
  std::vector<Tree> trees;
  auto tree_id = [&](Tree t) {
    auto [it, inserted] = tree_ids.emplace(t.key(), static_cast<int>(trees.size()));
    if (inserted) trees.push_back(std::move(t));
    return it->second;
  };
  std::map<std::pair<int, int>, int> state_ids;
  std::vector<std::pair<int, int>> states;
  auto state = [&](int tree, int prio) {
    auto [it, inserted] = state_ids.emplace(std::make_pair(tree, prio), static_cast<int>(states.size()));
    if (inserted) states.emplace_back(tree, prio);
    return it->second;
  };

  ParityWordAutomaton d;
  d.alphabet = b.alphabet;
  d.initial = state(tree_id(safra.initial()), safra.quiet_priority());
  // Successors depend only on the tree, so cache them per tree.
  std::vector<std::vector<std::pair<int, int>>> cache;
  for (std::size_t s = 0; s < states.size(); ++s) {
    int tree = states[s].first;
    if (cache.size() <= static_cast<std::size_t>(tree)) cache.resize(tree + 1);
    if (cache[tree].empty()) {
      std::vector<std::pair<int, int>> row;
      for (unsigned l = 0; l < sigma; ++l) {
        auto [next, prio] = safra.step(trees[tree], l);
        row.emplace_back(tree_id(std::move(next)), prio);
      }
      if (cache.size() <= static_cast<std::size_t>(tree)) cache.resize(tree + 1);
      cache[tree] = std::move(row);
    }
    auto row = cache[tree];
    for (unsigned l = 0; l < sigma; ++l) d.delta.push_back(state(row[l].first, row[l].second));
  }
  d.num_states = static_cast<int>(states.size());
  for (const auto& [tree, prio] : states) d.priority.push_back(prio);
  return d;
}

ParityWordAutomaton minimize(const ParityWordAutomaton& in) {
  ParityWordAutomaton d = reachable(in);
  const std::size_t sigma = d.alphabet.size();
  const int n = d.num_states;

  // Priority compression preserving parity and order.
  {
    std::vector<int> ps = d.priority;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    std::map<int, int> remap;
    int next = 0;
    for (int p : ps) {
      if (next % 2 != p % 2) ++next;
      remap[p] = next;
    }
    for (int& p : d.priority) p = remap[p];
  }

  std::vector<int> cls(d.priority.begin(), d.priority.end());
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{cls[q]};
      for (unsigned l = 0; l < sigma; ++l) sig.push_back(cls[d.next(q, l)]);
      next[q] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size())).first->second;
    }
    cls = std::move(next);
    if (sig_ids.size() == count) break;
    count = sig_ids.size();
  }
  ParityWordAutomaton out;
  out.alphabet = d.alphabet;
  out.num_states = static_cast<int>(count);
  out.initial = cls[d.initial];
  out.priority.assign(count, 0);
  out.delta.assign(count * sigma, 0);
  for (int q = 0; q < n; ++q) {
    out.priority[cls[q]] = d.priority[q];
    for (unsigned l = 0; l < sigma; ++l) out.delta[cls[q] * sigma + l] = cls[d.next(q, l)];
  }
  return reachable(out);
}

}  // namespace aeltl
