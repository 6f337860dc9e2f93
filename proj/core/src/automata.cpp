#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "aeltl/automata.hpp"
#include "aeltl/error.hpp"

namespace aeltl {

unsigned LocalAlphabet::project(Letter l) const {
  unsigned out = 0;
  for (std::size_t b = 0; b < atoms.size(); ++b)
    if (l >> atoms[b] & 1) out |= 1u << b;
  return out;
}

bool BuchiAutomaton::deterministic() const {
  if (initial.size() > 1) return false;
  for (const auto& t : delta)
    if (t.size() > 1) return false;
  return true;
}

int ParityWordAutomaton::max_priority() const {
  return priority.empty() ? 0 : *std::max_element(priority.begin(), priority.end());
}

int ParityWordAutomaton::index() const {
  auto p = priority;
  std::sort(p.begin(), p.end());
  return static_cast<int>(std::unique(p.begin(), p.end()) - p.begin());
}

namespace {

constexpr int kMaxEventualities = 64;

// Expansion of obligation sets into one-step branches.
class Tableau {
 public:
  explicit Tableau(const Formula& root) {
    root_ = intern(root);
    std::vector<int> atoms = root.atoms();
    alphabet_.atoms = atoms;
    for (std::size_t b = 0; b < atoms.size(); ++b) bit_[atoms[b]] = static_cast<int>(b);
    if (eventualities_.size() > kMaxEventualities) throw Error("formula too large for tableau");
  }

  struct Branch {
    unsigned pos = 0;
    unsigned neg = 0;
    std::vector<int> next;
    std::uint64_t fulfilled = 0;  // bit i: eventuality i not postponed

    friend bool operator==(const Branch&, const Branch&) = default;
    friend auto operator<=>(const Branch&, const Branch&) = default;
  };

  int root() const { return root_; }
  const LocalAlphabet& alphabet() const { return alphabet_; }
  std::size_t num_eventualities() const { return eventualities_.size(); }

  std::vector<Branch> expand(const std::vector<int>& state) {
    std::vector<Branch> out;
    Partial p;
    p.todo = state;
    run(std::move(p), out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  struct Partial {
    std::vector<int> todo;
    std::vector<int> done;
    unsigned pos = 0;
    unsigned neg = 0;
    std::vector<int> next;
    std::uint64_t postponed = 0;
  };

  int intern(const Formula& f) {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    if (f.is_unary() || f.is_binary()) intern(f.lhs());
    if (f.is_binary()) intern(f.rhs());
    int id = static_cast<int>(forms_.size());
    forms_.push_back(f);
    ids_.emplace(f, id);
    if (f.op() == Op::kUntil || f.op() == Op::kEventually) {
      ev_index_[id] = static_cast<int>(eventualities_.size());
      eventualities_.push_back(id);
    }
    return id;
  }

  int id(const Formula& f) const { return ids_.at(f); }

  static void add(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  }

  void run(Partial p, std::vector<Branch>& out) {
    while (!p.todo.empty()) {
      int fid = p.todo.back();
      p.todo.pop_back();
      if (std::binary_search(p.done.begin(), p.done.end(), fid)) continue;
      add(p.done, fid);
      const Formula f = forms_[fid];
      switch (f.op()) {
        case Op::kTrue: break;
        case Op::kFalse: return;
        case Op::kAtom: p.pos |= 1u << bit_.at(f.atom()); break;
        case Op::kNot:
          if (f.lhs().op() != Op::kAtom) throw Error("tableau expects negation normal form");
          p.neg |= 1u << bit_.at(f.lhs().atom());
          break;
        case Op::kAnd:
          p.todo.push_back(id(f.lhs()));
          p.todo.push_back(id(f.rhs()));
          break;
        case Op::kOr: {
          Partial alt = p;
          alt.todo.push_back(id(f.rhs()));
          run(std::move(alt), out);
          p.todo.push_back(id(f.lhs()));
          break;
        }
        case Op::kNext: add(p.next, id(f.lhs())); break;
        case Op::kUntil:
        case Op::kEventually: {
          Partial later = p;
          if (f.op() == Op::kUntil) later.todo.push_back(id(f.lhs()));
          add(later.next, fid);
          later.postponed |= std::uint64_t{1} << ev_index_.at(fid);
          run(std::move(later), out);
          p.todo.push_back(id(f.op() == Op::kUntil ? f.rhs() : f.lhs()));
          break;
        }
        case Op::kAlways:
          p.todo.push_back(id(f.lhs()));
          add(p.next, fid);
          break;
        case Op::kRelease: {
          Partial later = p;
          later.todo.push_back(id(f.rhs()));
          add(later.next, fid);
          run(std::move(later), out);
          p.todo.push_back(id(f.lhs()));
          p.todo.push_back(id(f.rhs()));
          break;
        }
        case Op::kImplies: throw Error("tableau expects negation normal form");
      }
      if (p.pos & p.neg) return;
    }
    Branch b;
    b.pos = p.pos;
    b.neg = p.neg;
    b.next = std::move(p.next);
    const std::uint64_t all = eventualities_.size() == 64
                                  ? ~std::uint64_t{0}
                                  : (std::uint64_t{1} << eventualities_.size()) - 1;
    b.fulfilled = all & ~p.postponed;
    out.push_back(std::move(b));
  }

  std::vector<Formula> forms_;
  std::map<Formula, int> ids_;
  std::map<int, int> ev_index_;
  std::vector<int> eventualities_;
  std::map<int, int> bit_;
  LocalAlphabet alphabet_;
  int root_ = 0;
};

// Tarjan SCC; returns component id per node (reverse topological order).
std::vector<int> scc(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on(n, 0);
  int counter = 0, comps = 0;
  struct Frame { int v; std::size_t i; };
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    std::vector<Frame> call{{s, 0}};
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = 1;
    while (!call.empty()) {
      Frame& fr = call.back();
      if (fr.i < adj[fr.v].size()) {
        int w = adj[fr.v][fr.i++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[fr.v] = std::min(low[fr.v], index[w]);
        }
      } else {
        int v = fr.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on[w] = 0;
            comp[w] = comps;
            if (w == v) break;
          }
          ++comps;
        }
      }
    }
  }
  return comp;
}

// Keeps states that can reach an accepting cycle, then merges bisimilar states.
BuchiAutomaton prune(const BuchiAutomaton& b) {
  const int n = b.num_states;
  const std::size_t sigma = b.alphabet.size();
  std::vector<std::vector<int>> adj(n);
  for (int q = 0; q < n; ++q) {
    for (std::size_t l = 0; l < sigma; ++l)
      for (int t : b.next(q, static_cast<unsigned>(l))) adj[q].push_back(t);
    std::sort(adj[q].begin(), adj[q].end());
    adj[q].erase(std::unique(adj[q].begin(), adj[q].end()), adj[q].end());
  }
  auto comp = scc(adj);
  int ncomp = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<char> good_comp(ncomp, 0);
  std::vector<int> comp_size(ncomp, 0);
  for (int q = 0; q < n; ++q) ++comp_size[comp[q]];
  for (int q = 0; q < n; ++q) {
    if (!b.accepting[q]) continue;
    bool cyclic = comp_size[comp[q]] > 1 ||
                  std::binary_search(adj[q].begin(), adj[q].end(), q);
    if (cyclic) good_comp[comp[q]] = 1;
  }
  // Components come out in reverse topological order: successors first.
  std::vector<char> live_comp(ncomp, 0);
  std::vector<std::vector<int>> members(ncomp);
  for (int q = 0; q < n; ++q) members[comp[q]].push_back(q);
  for (int c = 0; c < ncomp; ++c) {
    bool live = good_comp[c];
    for (int q : members[c])
      for (int t : adj[q])
        if (comp[t] != c && live_comp[comp[t]]) live = true;
    live_comp[c] = live;
  }

  // Coarsest bisimulation among live states.
  std::vector<int> cls(n, -1);
  for (int q = 0; q < n; ++q)
    if (live_comp[comp[q]]) cls[q] = b.accepting[q] ? 1 : 0;
  for (bool changed = true; changed;) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next_cls(n, -1);
    for (int q = 0; q < n; ++q) {
      if (cls[q] < 0) continue;
      std::vector<int> sig{cls[q]};
      for (std::size_t l = 0; l < sigma; ++l) {
        std::vector<int> targets;
        for (int t : b.next(q, static_cast<unsigned>(l)))
          if (cls[t] >= 0) targets.push_back(cls[t]);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        sig.push_back(-1);
        sig.insert(sig.end(), targets.begin(), targets.end());
      }
      auto [it, inserted] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
      next_cls[q] = it->second;
    }
    int before = 0, after = static_cast<int>(sig_ids.size());
    {
      std::vector<int> c = cls;
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
      before = static_cast<int>(c.size()) - (c.empty() || c.front() >= 0 ? 0 : 1);
    }
    changed = after != before;
    cls = std::move(next_cls);
  }

  // Renumber classes by first occurrence in a BFS from the initial states.
  BuchiAutomaton out;
  out.alphabet = b.alphabet;
  std::map<int, int> rename;
  std::vector<int> rep;
  std::vector<int> queue;
  auto visit = [&](int q) {
    if (cls[q] < 0) return -1;
    auto [it, inserted] = rename.emplace(cls[q], static_cast<int>(rep.size()));
    if (inserted) {
      rep.push_back(q);
      queue.push_back(q);
    }
    return it->second;
  };
  for (int q : b.initial) {
    int r = visit(q);
    if (r >= 0) out.initial.push_back(r);
  }
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int q = queue[k];
    for (std::size_t l = 0; l < sigma; ++l)
      for (int t : b.next(q, static_cast<unsigned>(l))) visit(t);
  }
  out.num_states = static_cast<int>(rep.size());
  out.accepting.resize(rep.size());
  out.delta.assign(rep.size() * sigma, {});
  for (std::size_t r = 0; r < rep.size(); ++r) {
    out.accepting[r] = b.accepting[rep[r]];
    for (std::size_t l = 0; l < sigma; ++l) {
      auto& t = out.delta[r * sigma + l];
      for (int x : b.next(rep[r], static_cast<unsigned>(l)))
        if (cls[x] >= 0) t.push_back(rename.at(cls[x]));
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
    }
  }
  return out;
}

}  // namespace

BuchiAutomaton ltl_to_nbw(const Formula& f) {
  Tableau tab(nnf(f));
  const LocalAlphabet& alpha = tab.alphabet();
  const std::size_t sigma = alpha.size();
  const int k = static_cast<int>(tab.num_eventualities());

  std::map<std::vector<int>, int> obligation_ids;
  std::vector<std::vector<Tableau::Branch>> expansions;
  auto obligation = [&](std::vector<int> set) {
    auto [it, inserted] = obligation_ids.emplace(set, static_cast<int>(expansions.size()));
    if (inserted) expansions.push_back(tab.expand(set));
    return it->second;
  };

  // NBW state = (obligation set, degeneralization level 0..k).
  std::map<std::pair<int, int>, int> state_ids;
  std::vector<std::pair<int, int>> states;
  auto state = [&](int obl, int level) {
    auto [it, inserted] = state_ids.emplace(std::make_pair(obl, level), static_cast<int>(states.size()));
    if (inserted) states.emplace_back(obl, level);
    return it->second;
  };

  BuchiAutomaton b;
  b.alphabet = alpha;
  b.initial.push_back(state(obligation({tab.root()}), 0));
  for (std::size_t s = 0; s < states.size(); ++s) {
    auto [obl, level] = states[s];
    // Copy: obligation() may grow `expansions`.
    std::vector<Tableau::Branch> branches = expansions[obl];
    b.delta.resize((s + 1) * sigma);
    for (const auto& br : branches) {
      int target_obl = obligation(br.next);
      int i = level == k ? 0 : level;
      while (i < k && (br.fulfilled >> i & 1)) ++i;
      int target = state(target_obl, i);
      for (unsigned l = 0; l < sigma; ++l) {
        if ((l & br.pos) != br.pos || (l & br.neg) != 0) continue;
        b.delta[s * sigma + l].push_back(target);
      }
    }
    for (unsigned l = 0; l < sigma; ++l) {
      auto& t = b.delta[s * sigma + l];
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
    }
  }
  b.num_states = static_cast<int>(states.size());
  b.delta.resize(states.size() * sigma);
  b.accepting.resize(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) b.accepting[s] = states[s].second == k;
  return prune(b);
}

bool nbw_accepts(const BuchiAutomaton& b, const LassoWord& w) {
  if (w.loop.empty()) throw Error("lasso loop must be nonempty");
  const std::size_t n = w.length();
  const std::size_t total = static_cast<std::size_t>(b.num_states) * n;
  std::vector<std::vector<int>> adj(total);
  auto node = [&](int q, std::size_t i) { return static_cast<int>(static_cast<std::size_t>(q) * n + i); };
  for (int q = 0; q < b.num_states; ++q)
    for (std::size_t i = 0; i < n; ++i)
      for (int t : b.next(q, b.alphabet.project(w.at(i)))) adj[node(q, i)].push_back(node(t, w.successor(i)));
  std::vector<char> reach(total, 0);
  std::vector<int> stack;
  for (int q : b.initial) {
    reach[node(q, 0)] = 1;
    stack.push_back(node(q, 0));
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int t : adj[v])
      if (!reach[t]) {
        reach[t] = 1;
        stack.push_back(t);
      }
  }
  auto comp = scc(adj);
  std::vector<int> size(total + 1, 0);
  for (std::size_t v = 0; v < total; ++v) ++size[comp[v]];
  for (std::size_t v = 0; v < total; ++v) {
    if (!reach[v] || !b.accepting[v / n]) continue;
    if (size[comp[v]] > 1) return true;
    for (int t : adj[v])
      if (t == static_cast<int>(v)) return true;
  }
  return false;
}

bool dpw_run_lasso(const ParityWordAutomaton& d, const LassoWord& w) {
  if (w.loop.empty()) throw Error("lasso loop must be nonempty");
  int q = d.initial;
  for (Letter l : w.stem) q = d.step(q, l);
  const std::size_t c = w.loop.size();
  // first[q * c + j]: step at which (q, loop position j) was first seen.
  std::vector<long> first(static_cast<std::size_t>(d.num_states) * c, -1);
  std::vector<int> trace;
  for (std::size_t step = 0;; ++step) {
    std::size_t j = step % c;
    auto key = static_cast<std::size_t>(q) * c + j;
    if (first[key] >= 0) {
      int best = d.priority[q];
      for (std::size_t k = static_cast<std::size_t>(first[key]); k < trace.size(); ++k)
        best = std::min(best, d.priority[trace[k]]);
      return best % 2 == 0;
    }
    first[key] = static_cast<long>(step);
    trace.push_back(q);
    q = d.step(q, w.loop[j]);
  }
}

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::kFw: return "F w";
    case Shape::kFGw: return "F G w";
    case Shape::kGFw: return "G F w";
  }
  return "?";
}

Formula psi_formula(Shape shape, const Formula& f, int w_index) {
  Formula w = Formula::atom("w", w_index);
  Formula theta = shape == Shape::kFw    ? eventually(w)
                  : shape == Shape::kFGw ? eventually(always(w))
                                         : always(eventually(w));
  return implies(theta, f);
}

ParityWordAutomaton dpw_for_psi(Shape shape, const Formula& f, int w_index) {
  return ltl_to_dpw(psi_formula(shape, f, w_index));
}

ParityWordAutomaton ltl_to_dpw(const Formula& f) { return minimize(nbw_to_dpw(ltl_to_nbw(f))); }

namespace {

std::string letter_text(unsigned l, const LocalAlphabet& a, const Vocabulary& names) {
  std::string out = "{";
  bool first = true;
  for (std::size_t b = 0; b < a.bits(); ++b) {
    if (!(l >> b & 1)) continue;
    if (!first) out += ",";
    int idx = a.atoms[b];
    out += idx < static_cast<int>(names.size()) ? names.name(idx) : "w";
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string dump(const BuchiAutomaton& b, const Vocabulary& names) {
  std::ostringstream out;
  out << "nbw states=" << b.num_states << " initial=[";
  for (std::size_t i = 0; i < b.initial.size(); ++i) out << (i ? "," : "") << "q" << b.initial[i];
  out << "]\n";
  for (int q = 0; q < b.num_states; ++q) {
    out << "q" << q << (b.accepting[q] ? " accepting" : "") << "\n";
    for (unsigned l = 0; l < b.alphabet.size(); ++l)
      for (int t : b.next(q, l)) out << "  q" << q << " -" << letter_text(l, b.alphabet, names) << "-> q" << t << "\n";
  }
  return out.str();
}

std::string dump(const ParityWordAutomaton& d, const Vocabulary& names) {
  std::ostringstream out;
  out << "dpw states=" << d.num_states << " initial=q" << d.initial << "\n";
  for (int q = 0; q < d.num_states; ++q) {
    out << "q" << q << " priority=" << d.priority[q] << "\n";
    for (unsigned l = 0; l < d.alphabet.size(); ++l)
      out << "  q" << q << " -" << letter_text(l, d.alphabet, names) << "-> q" << d.next(q, l) << "\n";
  }
  return out.str();
}

}  // namespace aeltl
