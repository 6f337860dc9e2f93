#include <gtest/gtest.h>

#include "aeltl/checker.hpp"
#include "aeltl/error.hpp"
#include "aeltl/oracle.hpp"
#include "aeltl/random.hpp"

using namespace aeltl;

namespace {

const PlanningDomain& tree() {
  static const PlanningDomain d = gen_binary_tree();
  return d;
}

bool on_tree(const char* goal) {
  const PlanningDomain& d = tree();
  return check(d, lowest_action_plan(d), parse_goal(goal, d.atoms)).verdict;
}

TEST(Goal, ParseAndPrint) {
  Goal g = parse_goal("AE . F p", tree().atoms);
  EXPECT_EQ(g.quantifier, (PathQuantifier{"AE", ""}));
  EXPECT_EQ(to_string(g), "AE . F p");
  EXPECT_THROW(parse_goal("AX . F p", tree().atoms), ParseError);
  EXPECT_THROW(parse_goal("AE . F r", tree().atoms), Error);
  EXPECT_THROW(parse_goal("AE F p", tree().atoms), Error);
}

TEST(Goal, ExpandsDefinitions) {
  PlanningDomain d = gen_blocks_world();
  Goal named = parse_goal("AE . F G tower", d);
  Goal spelled = parse_goal("AE . F G (C_on_B & B_on_A & A_on_table)", d.atoms);
  EXPECT_EQ(named.formula, spelled.formula);
  EXPECT_EQ(parse_goal("E . F scattered", d).formula,
            parse_goal("E . F (A_on_table & B_on_table & C_on_table)", d.atoms).formula);
  EXPECT_THROW(parse_goal("AE . F tower", d.atoms), Error);
}

TEST(Check, TreeExamples) {
  EXPECT_TRUE(on_tree("E . G !q"));
  EXPECT_FALSE(on_tree("EA . G !q"));
  EXPECT_FALSE(on_tree("A . F p"));
  EXPECT_TRUE(on_tree("AEA . F p"));
  EXPECT_TRUE(on_tree("(AE)^w . G F p"));
  EXPECT_FALSE(on_tree("AEA . G F p"));
  EXPECT_FALSE(on_tree("(AE)^w . F G p"));
  EXPECT_TRUE(on_tree("EAE . F G p"));
  EXPECT_TRUE(on_tree("EA . X p"));
  EXPECT_FALSE(on_tree("AE . X p"));
  EXPECT_TRUE(on_tree("AE . F p"));
}

TEST(Check, NonCanonicalWordsAreNormalized) {
  EXPECT_EQ(on_tree("AEAE . X p"), on_tree("AE . X p"));
  EXPECT_EQ(on_tree("A(EA)^w . G F p"), on_tree("(AE)^w . G F p"));
  EXPECT_TRUE(on_tree("EEA . X p"));
}

TEST(Check, SingleState) {
  PlanningDomain d = gen_single_state({"p"});
  FiniteMemoryPlan p = lowest_action_plan(d);
  for (Canonical q : kAllCanonical) {
    Goal yes{as_word(q), parse_ltl("G p", d.atoms)};
    Goal no{as_word(q), parse_ltl("F !p", d.atoms)};
    EXPECT_TRUE(check(d, p, yes).verdict) << to_string(q);
    EXPECT_FALSE(check(d, p, no).verdict) << to_string(q);
  }
}

// Row and column shape taken from the strictness discussion: the expected
// cell is computed from the quantifier's letters, not from the checker.
TEST(Strictness, Table) {
  auto starts_with_e = [](Canonical q) { return as_word(q).prefix.empty()
                                                    ? as_word(q).period[0] == 'E'
                                                    : as_word(q).prefix[0] == 'E'; };
  auto in = [](Canonical q, std::initializer_list<Canonical> set) {
    return std::find(set.begin(), set.end(), q) != set.end();
  };
  using C = Canonical;
  const auto table = strictness_table();
  for (std::size_t i = 0; i < kAllCanonical.size(); ++i) {
    const Canonical q = kAllCanonical[i];
    const std::array<bool, 5> want = {
        q != C::kA,
        in(q, {C::kAE, C::kEAE, C::kE, C::kAEw, C::kEAw}),
        in(q, {C::kAE, C::kEAE, C::kE}),
        q == C::kE,
        starts_with_e(q),
    };
    EXPECT_EQ(table[i], want) << to_string(q);
  }
}

// Every non-reflexive edge of the implication order is separated by some
// formula of the table.
TEST(Strictness, WitnessesEveryEdge) {
  const auto table = strictness_table();
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const Canonical a = kAllCanonical[i], b = kAllCanonical[j];
      if (a == b || !implies(a, b)) continue;
      bool separated = false;
      for (std::size_t k = 0; k < 5; ++k) {
        EXPECT_TRUE(!table[i][k] || table[j][k]) << to_string(a) << " -> " << to_string(b);
        separated = separated || (!table[i][k] && table[j][k]);
      }
      EXPECT_TRUE(separated) << to_string(a) << " -> " << to_string(b);
    }
}

struct Instance {
  PlanningDomain d;
  FiniteMemoryPlan p;
  ExecutionGraph g;
};

Instance random_instance(Rng& rng, int max_memory = 2) {
  Instance in;
  RandomDomainOptions o;
  o.states = 1 + static_cast<int>(rng() % 4);
  o.actions = 1 + static_cast<int>(rng() % 2);
  in.d = random_domain(rng, o);
  in.p = random_plan(rng, in.d, 1 + static_cast<int>(rng() % max_memory));
  in.g = product(in.d, in.p);
  return in;
}

TEST(Check, MonotoneAlongImplication) {
  Rng rng(101);
  for (int i = 0; i < 150; ++i) {
    Instance in = random_instance(rng);
    Formula f = random_formula(rng, in.d.atoms, 1 + i % 3);
    Checker c(f);
    std::map<Canonical, bool> v;
    for (Canonical q : kAllCanonical) v[q] = c.check(in.g, q).verdict;
    for (Canonical a : kAllCanonical)
      for (Canonical b : kAllCanonical)
        if (implies(a, b) && v[a]) {
          EXPECT_TRUE(v[b]) << to_string(a) << " " << to_string(f);
        }
  }
}

TEST(Check, RawWordsAgreeWithNormalForm) {
  Rng rng(103);
  for (int i = 0; i < 300; ++i) {
    Instance in = random_instance(rng);
    Formula f = random_formula(rng, in.d.atoms, 1 + i % 3);
    Checker c(f);
    PathQuantifier q = random_quantifier(rng, 6, 3);
    EXPECT_EQ(c.check_word(in.g, q), c.check(in.g, normalize(q)).verdict)
        << to_string(q) << " " << to_string(f);
  }
}

bool all_equal(const Checker& c, const ExecutionGraph& g, std::initializer_list<Canonical> qs) {
  std::optional<bool> first;
  for (Canonical q : qs) {
    bool v = c.check(g, q).verdict;
    if (first && *first != v) return false;
    first = v;
  }
  return true;
}

TEST(Check, ReachabilityAndMaintainabilityCollapse) {
  using C = Canonical;
  Rng rng(107);
  for (int i = 0; i < 150; ++i) {
    Instance in = random_instance(rng);
    Formula q = random_propositional(rng, in.d.atoms);
    Checker fq(eventually(q)), gq(always(q));
    EXPECT_TRUE(all_equal(fq, in.g, {C::kE, C::kEA, C::kEAE, C::kEAw})) << to_string(q);
    EXPECT_TRUE(all_equal(fq, in.g, {C::kAE, C::kAEA, C::kAEw})) << to_string(q);
    EXPECT_TRUE(all_equal(gq, in.g, {C::kA, C::kAE, C::kAEA, C::kAEw})) << to_string(q);
    EXPECT_TRUE(all_equal(gq, in.g, {C::kEA, C::kEAE, C::kEAw})) << to_string(q);
  }
}

LassoWord word_of(const ExecutionGraph& g, const CheckResult& r) {
  LassoWord w;
  for (int v : r.stem) w.stem.push_back(g.labels[v]);
  for (int v : r.loop) w.loop.push_back(g.labels[v]);
  return w;
}

void expect_path(const ExecutionGraph& g, const CheckResult& r) {
  std::vector<int> path = r.stem;
  path.insert(path.end(), r.loop.begin(), r.loop.end());
  ASSERT_FALSE(r.loop.empty());
  EXPECT_EQ(path.front(), g.root);
  path.push_back(r.loop.front());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto& s = g.succ[path[i]];
    EXPECT_NE(std::find(s.begin(), s.end(), path[i + 1]), s.end());
  }
}

TEST(Check, LassoWitnesses) {
  Rng rng(109);
  for (int i = 0; i < 200; ++i) {
    Instance in = random_instance(rng);
    Formula f = random_formula(rng, in.d.atoms, 1 + i % 3);
    Checker c(f);
    CheckResult e = c.check(in.g, Canonical::kE);
    if (e.verdict) {
      ASSERT_EQ(e.witness_kind, CheckResult::Witness::kLasso);
      expect_path(in.g, e);
      EXPECT_TRUE(eval_lasso(f, word_of(in.g, e))) << to_string(f);
    }
    CheckResult a = c.check(in.g, Canonical::kA);
    if (!a.verdict) {
      ASSERT_EQ(a.witness_kind, CheckResult::Witness::kLasso);
      expect_path(in.g, a);
      EXPECT_FALSE(eval_lasso(f, word_of(in.g, a))) << to_string(f);
    }
  }
}

TEST(Check, CommitWitnessIsUniversallyGood) {
  Rng rng(113);
  for (int i = 0; i < 200; ++i) {
    Instance in = random_instance(rng);
    Formula f = random_formula(rng, in.d.atoms, 1 + i % 2);
    Checker c(f);
    CheckResult ea = c.check(in.g, Canonical::kEA);
    if (!ea.verdict) continue;
    ASSERT_EQ(ea.witness_kind, CheckResult::Witness::kNodes);
    ASSERT_EQ(ea.nodes.size(), 1u);
    EXPECT_TRUE(reachable_from(in.g.succ, in.g.root)[ea.nodes[0]]);
  }
}

TEST(Check, AgreesWithOracleOnFiniteQuantifiers) {
  Rng rng(127);
  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    Instance in = random_instance(rng);
    if (in.g.size() > 8) continue;
    Formula f = random_formula(rng, in.d.atoms, 1 + i % 3);
    Checker c(f);
    HistoryQuotient t = good_sets_bruteforce(in.g, f, affordable_bounds(in.g));
    for (Canonical q : kAllCanonical) {
      if (!is_finite(q)) continue;
      EXPECT_EQ(c.check(in.g, q).verdict, check_bruteforce(t, q))
          << to_string(q) << " " << to_string(f) << "\n"
          << write_domain(in.d) << write_plan(in.p, in.d);
      ++compared;
    }
  }
  EXPECT_GT(compared, 300);
}

TEST(Check, AtomMismatch) {
  PlanningDomain d = gen_binary_tree();
  Goal g{parse_quantifier("A"), parse_ltl("F x", Vocabulary({"x"}))};
  EXPECT_THROW(check(d, lowest_action_plan(d), g), Error);
}

}  // namespace
