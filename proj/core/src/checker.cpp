#include "aeltl/checker.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "aeltl/error.hpp"

namespace aeltl {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string collapse(const std::string& w) {
  std::string out;
  for (char c : w)
    if (out.empty() || out.back() != c) out += c;
  return out;
}

void require_atoms_rec(const Formula& f, const Vocabulary& atoms) {
  if (f.op() == Op::kAtom) {
    if (f.atom() < 0 || static_cast<std::size_t>(f.atom()) >= atoms.size() ||
        atoms.name(f.atom()) != f.name()) {
      throw Error("atom mismatch: '" + f.name() + "' is not a domain atom at index " +
                  std::to_string(f.atom()));
    }
    return;
  }
  if (f.is_unary()) require_atoms_rec(f.lhs(), atoms);
  if (f.is_binary()) {
    require_atoms_rec(f.lhs(), atoms);
    require_atoms_rec(f.rhs(), atoms);
  }
}

std::vector<std::vector<int>> reverse(const std::vector<std::vector<int>>& succ) {
  std::vector<std::vector<int>> pred(succ.size());
  for (std::size_t v = 0; v < succ.size(); ++v)
    for (int t : succ[v]) pred[t].push_back(static_cast<int>(v));
  return pred;
}

// Nodes that can reach some node of `target` (reflexive).
std::vector<char> can_reach(const std::vector<std::vector<int>>& pred,
                            const std::vector<char>& target) {
  std::vector<char> out = target;
  std::vector<int> stack;
  for (std::size_t v = 0; v < target.size(); ++v)
    if (target[v]) stack.push_back(static_cast<int>(v));
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : pred[v])
      if (!out[u]) {
        out[u] = 1;
        stack.push_back(u);
      }
  }
  return out;
}

std::vector<char> complement(std::vector<char> s) {
  for (auto& x : s) x = !x;
  return s;
}

// Nodes satisfying word.phi for an alternating finite word, given the good
// sets for the last turn.
std::vector<char> finite_sat(const std::string& word, const std::vector<std::vector<int>>& pred,
                             const std::vector<char>& good_e, const std::vector<char>& good_a) {
  std::vector<char> sat = word.back() == 'A' ? good_a : good_e;
  for (std::size_t i = word.size() - 1; i-- > 0;) {
    if (word[i] == 'E')
      sat = can_reach(pred, sat);
    else
      sat = complement(can_reach(pred, complement(sat)));
  }
  return sat;
}

Solution one_player(const ProductGraph& p, Mode mode) {
  ParityGame g;
  const Player who = mode == Mode::kExists ? Player::kEven : Player::kOdd;
  for (std::size_t v = 0; v < p.size(); ++v) g.add_node(who, p.priority[v]);
  for (std::size_t v = 0; v < p.size(); ++v)
    for (int t : p.succ[v]) g.add_edge(static_cast<int>(v), t);
  return solve(g);
}

// Follows a positional strategy from `from` until a node repeats.
void strategy_lasso(const ProductGraph& p, const Solution& s, int from, CheckResult& out) {
  std::vector<int> path;
  std::map<int, std::size_t> seen;
  int v = from;
  while (!seen.count(v)) {
    seen[v] = path.size();
    path.push_back(v);
    v = s.strategy[v];
  }
  const std::size_t start = seen[v];
  out.witness_kind = CheckResult::Witness::kLasso;
  for (std::size_t i = 0; i < path.size(); ++i)
    (i < start ? out.stem : out.loop).push_back(p.exec[path[i]]);
}

int first_in(const std::vector<int>& order, const std::vector<char>& reach,
             const std::vector<char>& set) {
  for (int v : order)
    if (reach[v] && set[v]) return v;
  return -1;
}

// Replaces definition names by their formulas and reindexes atoms into `atoms`.
Formula expand(const Formula& f, const Vocabulary& atoms, const std::vector<Definition>& defs) {
  switch (f.op()) {
    case Op::kAtom:
      for (const auto& def : defs)
        if (def.name == f.name()) return def.formula;
      return Formula::atom(f.name(), atoms.index_of(f.name()));
    case Op::kTrue:
    case Op::kFalse:
      return f;
    default:
      break;
  }
  if (f.is_unary()) return Formula::unary(f.op(), expand(f.lhs(), atoms, defs));
  return Formula::binary(f.op(), expand(f.lhs(), atoms, defs), expand(f.rhs(), atoms, defs));
}

}  // namespace

Goal parse_goal(std::string_view text, const PlanningDomain& d) {
  if (d.definitions.empty()) return parse_goal(text, d.atoms);
  std::vector<std::string> names = d.atoms.names();
  for (const auto& def : d.definitions) names.push_back(def.name);
  Goal g = parse_goal(text, Vocabulary(names));
  g.formula = expand(g.formula, d.atoms, d.definitions);
  return g;
}

Goal parse_goal(std::string_view text, const Vocabulary& atoms) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    throw ParseError("goal must have the form '<quantifier> . <ltl>'", 0);
  }
  std::string q = trim(text.substr(0, dot));
  PathQuantifier quantifier;
  try {
    quantifier = parse_quantifier(q);
  } catch (const ParseError& e) {
    throw ParseError(std::string("goal quantifier '") + q + "': " + e.what(), e.offset());
  }
  const std::size_t base = dot + 1;
  try {
    return Goal{quantifier, parse_ltl(text.substr(base), atoms)};
  } catch (const ParseError& e) {
    throw ParseError(std::string("goal formula at offset ") + std::to_string(base + e.offset()) +
                         ": " + e.what(),
                     base + e.offset());
  } catch (const Error& e) {
    throw Error(std::string("goal formula: ") + e.what());
  }
}

std::string to_string(const Goal& g) {
  return to_string(g.quantifier) + " . " + to_string(g.formula);
}

void require_atoms(const Formula& f, const Vocabulary& atoms) { require_atoms_rec(f, atoms); }

ProductGraph make_product(const ExecutionGraph& g, const ParityWordAutomaton& dpa) {
  ProductGraph p;
  std::map<std::pair<int, int>, int> id;
  auto node = [&](int e, int q) {
    auto [it, fresh] = id.try_emplace({e, q}, static_cast<int>(p.exec.size()));
    if (fresh) {
      p.exec.push_back(e);
      p.dpa.push_back(q);
      p.priority.push_back(dpa.priority[q]);
      p.succ.emplace_back();
    }
    return it->second;
  };
  p.root = node(g.root, dpa.step(dpa.initial, g.labels[g.root]));
  for (std::size_t v = 0; v < p.exec.size(); ++v) {
    const int e = p.exec[v];
    const int q = p.dpa[v];
    std::vector<int> out;
    for (int t : g.succ[e]) out.push_back(node(t, dpa.step(q, g.labels[t])));
    p.succ[v] = std::move(out);
  }
  return p;
}

std::vector<char> reachable_from(const std::vector<std::vector<int>>& succ, int from) {
  std::vector<char> seen(succ.size(), 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int t : succ[v])
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
  }
  return seen;
}

TurnGame build_turn_game(const ProductGraph& p, const std::vector<char>& good_a, bool a_first) {
  TurnGame tg;
  const int n = static_cast<int>(p.size());
  // Per product node v: a(v) A to move; e0(v) E to move, not yet moved;
  // e1(v) E has moved; pass(v) E hands the turn back; t(v) E stagnates.
  std::vector<int> a(n), e0(n), e1(n), pass(n), term(n);
  auto add = [&](Player who, int v, Event ev) {
    int id = tg.arena.add_node(who, 0);
    tg.lambda.push_back(p.priority[v]);
    tg.event.push_back(ev);
    tg.product_node.push_back(v);
    return id;
  };
  for (int v = 0; v < n; ++v) {
    a[v] = add(Player::kOdd, v, Event::kIdle);
    e0[v] = add(Player::kEven, v, Event::kPlain);
    e1[v] = add(Player::kEven, v, Event::kPlain);
    pass[v] = add(Player::kEven, v, Event::kGood);
    term[v] = tg.arena.add_terminal(good_a[v] ? Player::kEven : Player::kOdd);
    tg.lambda.push_back(0);
    tg.event.push_back(Event::kNeutral);
    tg.product_node.push_back(-1);
  }
  for (int v = 0; v < n; ++v) {
    for (int t : p.succ[v]) tg.arena.add_edge(a[v], a[t]);
    tg.arena.add_edge(a[v], e0[v]);
    for (int t : p.succ[v]) tg.arena.add_edge(e0[v], e1[t]);
    tg.arena.add_edge(e0[v], term[v]);
    for (int t : p.succ[v]) tg.arena.add_edge(e1[v], e1[t]);
    tg.arena.add_edge(e1[v], pass[v]);
    tg.arena.add_edge(pass[v], a[v]);
  }
  tg.root = a_first ? a[p.root] : e0[p.root];
  tg.gadget = parity_and_buchi(tg.arena, tg.lambda, tg.event, {tg.root});
  return tg;
}

Checker::Checker(Formula f) : formula_(std::move(f)), dpa_(ltl_to_dpw(formula_)) {}

CheckResult Checker::check(const ExecutionGraph& g, Canonical q) const {
  const ProductGraph p = make_product(g, dpa_);
  CheckResult out;
  out.canonical = q;

  if (q == Canonical::kAEw || q == Canonical::kEAw) {
    const auto good_a = one_player_good(p.succ, p.priority, Mode::kForall);
    TurnGame tg = build_turn_game(p, good_a, q == Canonical::kAEw);
    Solution s = solve(tg.gadget.game);
    out.verdict = s.even_wins(tg.gadget.roots[0]);
    std::vector<char> region(g.size(), 0);
    for (std::size_t x = 0; x < tg.gadget.game.size(); ++x) {
      int v = tg.product_node[tg.gadget.base[x]];
      if (v >= 0 && s.even_wins(static_cast<int>(x))) region[p.exec[v]] = 1;
    }
    for (std::size_t e = 0; e < g.size(); ++e)
      if (region[e]) out.nodes.push_back(static_cast<int>(e));
    out.witness_kind = CheckResult::Witness::kNodes;
    return out;
  }

  const Solution se = one_player(p, Mode::kExists);
  const Solution sa = one_player(p, Mode::kForall);
  std::vector<char> good_e(p.size()), good_a(p.size());
  for (std::size_t v = 0; v < p.size(); ++v) {
    good_e[v] = se.even_wins(static_cast<int>(v));
    good_a[v] = sa.even_wins(static_cast<int>(v));
  }
  const auto pred = reverse(p.succ);
  const std::string word = as_word(q).prefix;
  out.verdict = finite_sat(word, pred, good_e, good_a)[p.root];

  // Product nodes are numbered in discovery order from the root.
  std::vector<int> order(p.size());
  for (std::size_t v = 0; v < p.size(); ++v) order[v] = static_cast<int>(v);
  const auto reach = reachable_from(p.succ, p.root);
  auto node_witness = [&](int v) {
    if (v < 0) return;
    out.witness_kind = CheckResult::Witness::kNodes;
    out.nodes.push_back(p.exec[v]);
  };
  switch (q) {
    case Canonical::kE:
      if (out.verdict) strategy_lasso(p, se, p.root, out);
      break;
    case Canonical::kA:
      if (!out.verdict) strategy_lasso(p, sa, p.root, out);
      break;
    case Canonical::kEA:
    case Canonical::kAEA:
      if (out.verdict) node_witness(first_in(order, reach, good_a));
      if (!out.verdict && q == Canonical::kAEA)
        node_witness(first_in(order, reach, complement(can_reach(pred, good_a))));
      break;
    case Canonical::kAE:
      if (!out.verdict) node_witness(first_in(order, reach, complement(good_e)));
      break;
    case Canonical::kEAE:
      if (out.verdict)
        node_witness(first_in(order, reach, complement(can_reach(pred, complement(good_e)))));
      break;
    default:
      break;
  }
  return out;
}

bool Checker::check_word(const ExecutionGraph& g, const PathQuantifier& raw) const {
  if (raw.prefix.empty() && raw.period.empty()) throw Error("empty quantifier word");
  const ProductGraph p = make_product(g, dpa_);
  const auto good_a = one_player_good(p.succ, p.priority, Mode::kForall);
  const bool mixed = raw.period.find('A') != std::string::npos &&
                     raw.period.find('E') != std::string::npos;
  if (!mixed) {
    std::string w = collapse(raw.prefix + raw.period.substr(0, 1));
    const auto good_e = one_player_good(p.succ, p.priority, Mode::kExists);
    return finite_sat(w, reverse(p.succ), good_e, good_a)[p.root];
  }
  // Collapsing an infinite word whose period has both letters leaves strict
  // alternation starting from the first letter.
  const char first = (raw.prefix + raw.period)[0];
  TurnGame tg = build_turn_game(p, good_a, first == 'A');
  return solve(tg.gadget.game).even_wins(tg.gadget.roots[0]);
}

CheckResult check(const PlanningDomain& d, const FiniteMemoryPlan& p, const Goal& g) {
  require_atoms(g.formula, d.atoms);
  const ExecutionGraph eg = product(d, p);
  return Checker(g.formula).check(eg, normalize(g.quantifier));
}

std::array<std::array<bool, 5>, 8> strictness_table() {
  const PlanningDomain d = gen_binary_tree();
  const ExecutionGraph g = product(d, lowest_action_plan(d));
  std::array<std::array<bool, 5>, 8> table{};
  for (std::size_t j = 0; j < kStrictnessFormulas.size(); ++j) {
    Checker c(parse_ltl(kStrictnessFormulas[j], d.atoms));
    for (std::size_t i = 0; i < kAllCanonical.size(); ++i)
      table[i][j] = c.check(g, kAllCanonical[i]).verdict;
  }
  return table;
}

}  // namespace aeltl
