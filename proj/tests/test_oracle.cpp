#include <gtest/gtest.h>

#include <set>

#include "aeltl/checker.hpp"
#include "aeltl/error.hpp"
#include "aeltl/oracle.hpp"
#include "aeltl/random.hpp"

using namespace aeltl;

namespace {

ExecutionGraph tree_graph() {
  PlanningDomain d = gen_binary_tree();
  return product(d, lowest_action_plan(d));
}

Formula tree_ltl(const char* s) { return parse_ltl(s, gen_binary_tree().atoms); }

TEST(Lassos, SelfLoop) {
  PlanningDomain d = gen_single_state({"p"});
  ExecutionGraph g = product(d, lowest_action_plan(d));
  std::size_t count = 0;
  enumerate_lassos(g, g.root, 5, [&](const std::vector<int>& path, std::size_t j) {
    EXPECT_EQ(path, std::vector<int>(path.size(), 0));
    EXPECT_LT(j, path.size());
    ++count;
  });
  // A path of n nodes closes onto any of its n positions.
  EXPECT_EQ(count, 1u + 2 + 3 + 4 + 5);
}

// On the tree graph every node steps to p or q; a lasso of n nodes is the
// root followed by a word over {p, q} whose last step closes onto an earlier
// p/q node. Counted independently by brute force over words.
TEST(Lassos, ExhaustiveAndDuplicateFree) {
  ExecutionGraph g = tree_graph();
  std::set<std::pair<std::vector<int>, std::size_t>> seen;
  enumerate_lassos(g, g.root, 5, [&](const std::vector<int>& path, std::size_t j) {
    EXPECT_TRUE(seen.emplace(path, j).second);
    EXPECT_LT(j, path.size());
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const auto& s = g.succ[path[i]];
      EXPECT_NE(std::find(s.begin(), s.end(), path[i + 1]), s.end());
    }
    const auto& last = g.succ[path.back()];
    EXPECT_NE(std::find(last.begin(), last.end(), path[j]), last.end());
  });
  std::size_t want = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::size_t words = std::size_t{1} << (n - 1);
    // Each word of length n-1 over {p,q} closes to any earlier position
    // holding a p or q node: positions 1..n-1.
    want += words * (n - 1);
  }
  EXPECT_EQ(seen.size(), want);
}

TEST(Residual, Progression) {
  const Vocabulary v({"p", "q"});
  constexpr Letter P = 1, NONE = 0;
  auto f = [&](const char* s) { return parse_ltl(s, v); };
  EXPECT_EQ(progress(residual_of(f("F p")), P), Residual{{}});
  EXPECT_EQ(progress(residual_of(f("F p")), NONE), residual_of(f("F p")));
  EXPECT_EQ(progress(residual_of(f("G p")), NONE), Residual{});
  EXPECT_EQ(progress(residual_of(f("p U q")), P), residual_of(f("p U q")));
  EXPECT_EQ(progress(residual_of(f("X q & p")), P), residual_of(f("q")));
  EXPECT_EQ(residual_of(f("p | (p & q)")), residual_of(f("p")));
}

// A residual holds on a word iff the formula holds on the word prefixed by
// the letters read.
TEST(Residual, MatchesSemantics) {
  const Vocabulary v({"p", "q"});
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(rng, v, 1 + i % 3);
    LassoWord w = random_lasso(rng, 2, 6);
    LassoWord longer = w;
    Residual r = residual_of(f);
    const std::size_t k = static_cast<std::size_t>(rng() % 4);
    std::vector<Letter> read;
    for (std::size_t j = 0; j < k; ++j) read.push_back(static_cast<Letter>(rng() % 4));
    for (Letter l : read) r = progress(r, l);
    longer.stem.insert(longer.stem.begin(), read.begin(), read.end());
    ASSERT_EQ(holds(r, w), eval_lasso(f, longer)) << to_string(f);
  }
}

TEST(GoodSets, SingleNode) {
  PlanningDomain d = gen_single_state({"p"});
  ExecutionGraph g = product(d, lowest_action_plan(d));
  HistoryQuotient h = good_sets_bruteforce(g, parse_ltl("G p", d.atoms), {8, 100});
  ASSERT_EQ(h.nodes.size(), 1u);
  EXPECT_TRUE(h.nodes[0].any_true);
  EXPECT_TRUE(h.nodes[0].all_true);
  EXPECT_FALSE(h.advisory);
}

TEST(GoodSets, TreeEventuallyP) {
  ExecutionGraph g = tree_graph();
  HistoryQuotient h = good_sets_bruteforce(g, tree_ltl("F p"), {8, 100});
  // Histories that already visited p are universally good; the others are
  // only existentially good.
  for (const auto& n : h.nodes) {
    EXPECT_TRUE(n.any_true);
    const bool visited_p = n.residual == Residual{{}} || g.labels[n.exec] == 2;
    EXPECT_EQ(n.all_true, visited_p);
  }
  EXPECT_FALSE(h.nodes[0].all_true);
}

TEST(GoodSets, TreeAlwaysNotQ) {
  ExecutionGraph g = tree_graph();
  HistoryQuotient h = good_sets_bruteforce(g, tree_ltl("G !q"), {8, 100});
  for (const auto& n : h.nodes) EXPECT_FALSE(n.all_true);
}

TEST(GoodSets, HistoryBound) {
  ExecutionGraph g = tree_graph();
  EXPECT_THROW(good_sets_bruteforce(g, tree_ltl("F p"), {8, 1}), Error);
}

TEST(CheckBruteforce, TreeExamples) {
  ExecutionGraph g = tree_graph();
  const OracleBounds b{8, 1000};
  EXPECT_TRUE(check_bruteforce(g, tree_ltl("G !q"), Canonical::kE, b));
  EXPECT_TRUE(check_bruteforce(g, tree_ltl("F p"), Canonical::kAE, b));
  EXPECT_FALSE(check_bruteforce(g, tree_ltl("F p"), Canonical::kA, b));
  EXPECT_THROW(check_bruteforce(g, tree_ltl("F p"), Canonical::kAEw, b), Error);
}

// Growing the lasso bound past the affordable one does not change verdicts
// on small graphs.
TEST(CheckBruteforce, StableUnderLargerBounds) {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    RandomDomainOptions o;
    o.states = 3;
    PlanningDomain d = random_domain(rng, o);
    ExecutionGraph g = product(d, random_plan(rng, d, 1));
    Formula f = random_formula(rng, d.atoms, 1 + i % 2);
    OracleBounds small = affordable_bounds(g, 2'000);
    OracleBounds large = affordable_bounds(g, 50'000);
    HistoryQuotient a = good_sets_bruteforce(g, f, small), b = good_sets_bruteforce(g, f, large);
    for (Canonical q : kAllCanonical) {
      if (is_finite(q)) {
        EXPECT_EQ(check_bruteforce(a, q), check_bruteforce(b, q)) << to_string(f);
      }
    }
  }
}

TEST(Bounds, Sufficiency) {
  ExecutionGraph g = tree_graph();
  Formula f = tree_ltl("F p");
  EXPECT_EQ(sufficient_bounds(g, f).lasso_length, g.size() * closure(f).size());
  EXPECT_GE(affordable_bounds(g, 10).lasso_length, g.size());
}

TEST(EnumeratePlans, Examples) {
  PlanningDomain tree = gen_binary_tree();
  EXPECT_EQ(enumerate_plans(tree, 1, [](const FiniteMemoryPlan&) { return true; }), 1u);
  PlanningDomain two = gen_single_state({"p"}, 2);
  EXPECT_EQ(enumerate_plans(two, 1, [](const FiniteMemoryPlan&) { return true; }), 2u);
}

// Hand count for s, t with actions x, y each, both deterministic: x stays,
// y swaps. Memoryless: one action choice per reachable state.
TEST(EnumeratePlans, TwoStatesTwoMemory) {
  PlanningDomain d = parse_domain(
      "states: s t\ninit: s\naction x: s -> s ; t -> t\naction y: s -> t ; t -> s\n");
  std::set<std::string> distinct;
  const std::size_t n = enumerate_plans(d, 2, [&](const FiniteMemoryPlan& p) {
    EXPECT_TRUE(validate_plan(d, p).empty());
    distinct.insert(write_plan(p, d));
    return true;
  });
  EXPECT_EQ(n, distinct.size());
  // Independent count: canonical plans are determined by the reachable
  // (memory, state) pairs, decided in discovery order; brute force over all
  // rule tables with 2 memory states and keep one per canonical form.
  std::set<std::string> canonical;
  for (int code = 0; code < 256; ++code) {
    // rule (m, s) -> action bit, next memory bit
    auto action = [&](int m, int s) { return (code >> (2 * (2 * m + s))) & 1; };
    auto next = [&](int m, int s) { return (code >> (2 * (2 * m + s) + 1)) & 1; };
    // Explore reachable pairs, renaming memory in order of first use.
    std::map<int, int> rename{{0, 0}};
    std::vector<std::pair<int, int>> order{{0, 0}};
    std::set<std::pair<int, int>> known{{0, 0}};
    std::string key;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto [m, s] = order[i];
      const int a = action(m, s), nm = next(m, s);
      if (!rename.count(nm)) rename[nm] = static_cast<int>(rename.size());
      key += std::to_string(rename[m]) + std::to_string(s) + std::to_string(a) +
             std::to_string(rename[nm]) + ";";
      const int t = a == 0 ? s : 1 - s;
      if (known.insert({nm, t}).second) order.emplace_back(nm, t);
    }
    canonical.insert(key);
  }
  EXPECT_EQ(n, canonical.size());
}

TEST(EnumeratePlans, StopsEarlyAndGuardsCap) {
  PlanningDomain two = gen_single_state({"p"}, 2);
  int seen = 0;
  EXPECT_EQ(enumerate_plans(two, 2, [&](const FiniteMemoryPlan&) { return ++seen < 3; }), 3u);
  PlanEnumerationOptions o;
  o.cap = 3;
  EXPECT_THROW(enumerate_plans(two, 2, [](const FiniteMemoryPlan&) { return true; }, o), Error);
  EXPECT_THROW(enumerate_plans(two, 0, [](const FiniteMemoryPlan&) { return true; }), Error);
}

}  // namespace
