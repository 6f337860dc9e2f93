#include "aeltl/oracle.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "aeltl/error.hpp"

namespace aeltl {

namespace {

bool subset(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Drops clauses that contain another clause, then sorts.
Residual minimal(Residual r) {
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  r.erase(std::unique(r.begin(), r.end()), r.end());
  Residual out;
  for (auto& c : r) {
    bool covered = false;
    for (const auto& k : out)
      if (subset(k, c)) covered = true;
    if (!covered) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Residual kTrue{{}};
const Residual kFalse{};

Residual disj(Residual a, const Residual& b) {
  a.insert(a.end(), b.begin(), b.end());
  return minimal(std::move(a));
}

Residual conj(const Residual& a, const Residual& b) {
  Residual out;
  for (const auto& x : a)
    for (const auto& y : b) {
      std::vector<Formula> c;
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
      out.push_back(std::move(c));
    }
  return minimal(std::move(out));
}

Residual single(const Formula& f) { return {{f}}; }

// Boolean structure only; temporal subformulas stay as clause elements.
Residual expand(const Formula& f) {
  switch (f.op()) {
    case Op::kTrue: return kTrue;
    case Op::kFalse: return kFalse;
    case Op::kAnd: return conj(expand(f.lhs()), expand(f.rhs()));
    case Op::kOr: return disj(expand(f.lhs()), expand(f.rhs()));
    default: return single(f);
  }
}

// f holds at position i iff the result holds at position i + 1. f is in
// negation normal form.
Residual step(const Formula& f, Letter l) {
  switch (f.op()) {
    case Op::kAtom: return (l >> f.atom()) & 1 ? kTrue : kFalse;
    case Op::kNot: return (l >> f.lhs().atom()) & 1 ? kFalse : kTrue;
    case Op::kTrue: return kTrue;
    case Op::kFalse: return kFalse;
    case Op::kAnd: return conj(step(f.lhs(), l), step(f.rhs(), l));
    case Op::kOr: return disj(step(f.lhs(), l), step(f.rhs(), l));
    case Op::kNext: return expand(f.lhs());
    case Op::kUntil: return disj(step(f.rhs(), l), conj(step(f.lhs(), l), single(f)));
    case Op::kRelease: return conj(step(f.rhs(), l), disj(step(f.lhs(), l), single(f)));
    case Op::kEventually: return disj(step(f.lhs(), l), single(f));
    case Op::kAlways: return conj(step(f.lhs(), l), single(f));
    case Op::kImplies: break;
  }
  throw Error("internal: progression expects negation normal form");
}

}  // namespace

Residual residual_of(const Formula& f) { return expand(nnf(f)); }

Residual progress(const Residual& r, Letter l) {
  Residual out = kFalse;
  for (const auto& clause : r) {
    Residual c = kTrue;
    for (const auto& e : clause) c = conj(c, step(e, l));
    out = disj(std::move(out), c);
  }
  return out;
}

bool holds(const Residual& r, const LassoWord& w) {
  return std::any_of(r.begin(), r.end(), [&](const auto& clause) {
    return std::all_of(clause.begin(), clause.end(),
                       [&](const Formula& e) { return eval_lasso(e, w, 0); });
  });
}

OracleBounds sufficient_bounds(const ExecutionGraph& g, const Formula& f) {
  OracleBounds b;
  b.lasso_length = g.size() * closure(f).size();
  return b;
}

OracleBounds affordable_bounds(const ExecutionGraph& g, std::size_t budget) {
  // count[v][u]: paths of the current length from v ending in u.
  const std::size_t n = g.size();
  std::size_t length = 1;
  std::vector<std::vector<double>> count(n, std::vector<double>(n, 0.0));
  std::vector<double> total(n, 1.0);
  for (std::size_t v = 0; v < n; ++v) count[v][v] = 1.0;
  while (length < 64) {
    std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
    bool fits = true;
    for (std::size_t v = 0; v < n; ++v) {
      double sum = 0;
      for (std::size_t u = 0; u < n; ++u)
        for (int t : g.succ[u]) next[v][static_cast<std::size_t>(t)] += count[v][u];
      for (double c : next[v]) sum += c;
      // Each path closes into at most `length + 1` lassos.
      if ((total[v] + sum) * static_cast<double>(length + 1) > static_cast<double>(budget))
        fits = false;
    }
    if (!fits) break;
    for (std::size_t v = 0; v < n; ++v)
      for (double c : next[v]) total[v] += c;
    count = std::move(next);
    ++length;
  }
  OracleBounds b;
  // Every node has a lasso of at most |nodes| nodes.
  b.lasso_length = std::max(length, n);
  return b;
}

void enumerate_lassos(const ExecutionGraph& g, int from, std::size_t max_length,
                      const std::function<void(const std::vector<int>&, std::size_t)>& visit) {
  std::vector<int> path{from};
  std::vector<std::size_t> next_edge{0};
  // Emit every lasso closing at the current path end, then extend.
  auto emit = [&] {
    for (int t : g.succ[static_cast<std::size_t>(path.back())])
      for (std::size_t j = 0; j < path.size(); ++j)
        if (path[j] == t) visit(path, j);
  };
  emit();
  while (!path.empty()) {
    const auto& succ = g.succ[static_cast<std::size_t>(path.back())];
    std::size_t& e = next_edge.back();
    if (path.size() >= max_length || e >= succ.size()) {
      path.pop_back();
      next_edge.pop_back();
      continue;
    }
    path.push_back(succ[e++]);
    next_edge.push_back(0);
    emit();
  }
}

HistoryQuotient good_sets_bruteforce(const ExecutionGraph& g, const Formula& f,
                                     const OracleBounds& b) {
  HistoryQuotient h;
  h.advisory = b.lasso_length < sufficient_bounds(g, f).lasso_length;

  // Distinct label words of the lassos from each node.
  std::vector<std::vector<LassoWord>> words(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::set<std::pair<std::vector<Letter>, std::vector<Letter>>> seen;
    enumerate_lassos(g, static_cast<int>(v), b.lasso_length,
                     [&](const std::vector<int>& path, std::size_t j) {
                       std::vector<Letter> stem, loop;
                       for (std::size_t i = 0; i < path.size(); ++i)
                         (i < j ? stem : loop).push_back(g.labels[static_cast<std::size_t>(path[i])]);
                       seen.emplace(std::move(stem), std::move(loop));
                     });
    for (auto& [stem, loop] : seen) words[v].push_back(LassoWord{stem, loop});
  }
  // Truth of each clause element on each word, per node.
  std::vector<std::map<Formula, std::vector<char>>> truth(g.size());
  auto element = [&](int v, const Formula& e) -> const std::vector<char>& {
    auto& cache = truth[static_cast<std::size_t>(v)];
    auto it = cache.find(e);
    if (it == cache.end()) {
      std::vector<char> val;
      for (const auto& w : words[static_cast<std::size_t>(v)]) val.push_back(eval_lasso(e, w, 0));
      it = cache.emplace(e, std::move(val)).first;
    }
    return it->second;
  };

  std::map<std::pair<int, Residual>, int> ids;
  auto id = [&](int v, Residual r) {
    auto [it, fresh] = ids.try_emplace({v, r}, static_cast<int>(h.nodes.size()));
    if (fresh) {
      if (h.nodes.size() >= b.max_histories) throw Error("oracle history bound exceeded");
      h.nodes.push_back({v, std::move(r), {}, false, true});
    }
    return it->second;
  };
  id(g.root, residual_of(f));
  for (std::size_t x = 0; x < h.nodes.size(); ++x) {
    const int v = h.nodes[x].exec;
    const Residual next = progress(h.nodes[x].residual, g.labels[static_cast<std::size_t>(v)]);
    std::vector<int> succ;
    for (int t : g.succ[static_cast<std::size_t>(v)]) succ.push_back(id(t, next));
    h.nodes[x].succ = std::move(succ);

    const Residual& r = h.nodes[x].residual;
    for (std::size_t k = 0; k < words[static_cast<std::size_t>(v)].size(); ++k) {
      bool value = false;
      for (const auto& clause : r) {
        bool all = true;
        for (const auto& e : clause) all = all && element(v, e)[k];
        value = value || all;
      }
      h.nodes[x].any_true = h.nodes[x].any_true || value;
      h.nodes[x].all_true = h.nodes[x].all_true && value;
    }
  }
  return h;
}

bool check_bruteforce(const HistoryQuotient& h, Canonical q) {
  if (!is_finite(q)) throw Error("the oracle only decides finite quantifiers");
  const std::string word = as_word(q).prefix;
  const std::size_t n = h.nodes.size();
  // Finite extensions of a history are the classes reachable from its class.
  std::vector<std::vector<int>> reach(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{static_cast<int>(x)};
    seen[x] = 1;
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      reach[x].push_back(y);
      for (int t : h.nodes[static_cast<std::size_t>(y)].succ)
        if (!seen[static_cast<std::size_t>(t)]) seen[static_cast<std::size_t>(t)] = 1, stack.push_back(t);
    }
  }
  std::vector<char> sat(n);
  for (std::size_t x = 0; x < n; ++x)
    sat[x] = word.back() == 'A' ? h.nodes[x].all_true : h.nodes[x].any_true;
  for (std::size_t i = word.size() - 1; i-- > 0;) {
    std::vector<char> next(n);
    for (std::size_t x = 0; x < n; ++x) {
      auto ok = [&](int y) { return sat[static_cast<std::size_t>(y)] != 0; };
      next[x] = word[i] == 'A' ? std::all_of(reach[x].begin(), reach[x].end(), ok)
                               : std::any_of(reach[x].begin(), reach[x].end(), ok);
    }
    sat = std::move(next);
  }
  return sat[0];
}

bool check_bruteforce(const ExecutionGraph& g, const Formula& f, Canonical q,
                      const OracleBounds& b) {
  if (!is_finite(q)) throw Error("the oracle only decides finite quantifiers");
  return check_bruteforce(good_sets_bruteforce(g, f, b), q);
}

std::size_t enumerate_plans(const PlanningDomain& d, int memory,
                            const std::function<bool(const FiniteMemoryPlan&)>& visit,
                            const PlanEnumerationOptions& o) {
  if (memory < 1) throw Error("memory bound must be at least 1");
  const std::size_t size = d.num_states() * static_cast<std::size_t>(memory) * d.num_actions();
  if (size > o.cap) {
    throw Error("plan enumeration cap exceeded: " + std::to_string(size) + " > " +
                std::to_string(o.cap));
  }
  FiniteMemoryPlan plan;
  plan.initial = 0;
  std::vector<std::pair<int, int>> order{{0, d.init}};
  std::map<std::pair<int, int>, bool> known{{{0, d.init}, true}};
  std::size_t visited = 0;
  bool stop = false;

  // Pairs are decided in discovery order and new memory states are named in
  // order of first use, so each class is produced exactly once.
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int used) {
    if (stop) return;
    if (i == order.size()) {
      plan.memory.clear();
      for (int m = 0; m < used; ++m) plan.memory.push_back("m" + std::to_string(m));
      ++visited;
      if (!visit(plan)) stop = true;
      return;
    }
    auto [m, s] = order[i];
    for (int a : d.applicable_actions(s)) {
      for (int next = 0; next <= std::min(used, memory - 1); ++next) {
        const int now_used = std::max(used, next + 1);
        plan.set(m, s, a, next);
        const std::size_t mark = order.size();
        for (int t : d.successors(s, a))
          if (known.emplace(std::pair(next, t), true).second) order.emplace_back(next, t);
        go(i + 1, now_used);
        for (std::size_t k = mark; k < order.size(); ++k) known.erase(order[k]);
        order.resize(mark);
        plan.rules.erase({m, s});
        if (stop) return;
      }
    }
  };
  go(0, 1);
  return visited;
}

}  // namespace aeltl
