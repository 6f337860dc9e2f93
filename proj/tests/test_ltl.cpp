#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "aeltl/error.hpp"
#include "aeltl/ltl.hpp"
#include "aeltl/random.hpp"
#include "naive.hpp"

using namespace aeltl;

namespace {

const Vocabulary kPQ({"p", "q"});
constexpr Letter P = 1, Q = 2, NONE = 0;

Formula ltl(const char* s) { return parse_ltl(s, kPQ); }

TEST(Parse, EventuallyOfConjunction) {
  Formula f = ltl("F (p & G q)");
  ASSERT_EQ(f.op(), Op::kEventually);
  EXPECT_EQ(f.lhs().op(), Op::kAnd);
  EXPECT_EQ(f.lhs().lhs().name(), "p");
  EXPECT_EQ(f.lhs().rhs().op(), Op::kAlways);
  EXPECT_EQ(f.lhs().rhs().lhs().name(), "q");
}

TEST(Parse, Until) {
  Formula f = ltl("p U q");
  ASSERT_EQ(f.op(), Op::kUntil);
  EXPECT_EQ(f.lhs().name(), "p");
  EXPECT_EQ(f.rhs().name(), "q");
}

TEST(Parse, DanglingNegationReportsOffset) {
  try {
    ltl("F !");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
}

TEST(Parse, UndeclaredAtom) { EXPECT_THROW(ltl("F r"), Error); }

TEST(Parse, Precedence) {
  EXPECT_EQ(ltl("p | q & p"), ltl("p | (q & p)"));
  EXPECT_EQ(ltl("p -> q -> p"), ltl("p -> (q -> p)"));
  EXPECT_EQ(ltl("p U q U p"), ltl("p U (q U p)"));
  EXPECT_EQ(ltl("!p U q"), ltl("(!p) U q"));
  EXPECT_EQ(ltl("p & q U p"), ltl("p & (q U p)"));
}

TEST(Parse, RoundTripOnRandomFormulas) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    Formula f = random_formula(rng, kPQ, i % 5);
    std::string s = to_string(f);
    EXPECT_EQ(parse_ltl(s, kPQ), f) << s;
  }
}

TEST(Eval, Examples) {
  EXPECT_TRUE(eval_lasso(ltl("F p"), {{NONE}, {P}}));
  EXPECT_FALSE(eval_lasso(ltl("F G p"), {{}, {P, NONE}}));
  EXPECT_TRUE(eval_lasso(ltl("G F p"), {{}, {P, NONE}}));
  EXPECT_FALSE(eval_lasso(ltl("X p"), {{P}, {NONE}}));
}

TEST(Eval, UntilAgainstNaiveUnrolling) {
  LassoWord w{{P, P}, {Q}};
  EXPECT_EQ(eval_lasso(ltl("p U q"), w), naive::eval(ltl("p U q"), w, 0));
  EXPECT_TRUE(naive::eval(ltl("p U q"), w, 0));
}

TEST(Eval, AgreesWithNaiveSemantics) {
  Rng rng(11);
  for (int i = 0; i < 3000; ++i) {
    Formula f = random_formula(rng, kPQ, i % 4);
    LassoWord w = random_lasso(rng, 2, 6);
    auto all = eval_positions(f, w);
    for (std::size_t k = 0; k < w.length(); ++k)
      ASSERT_EQ(static_cast<bool>(all[k]), naive::eval(f, w, k)) << to_string(f) << " @" << k;
  }
}

TEST(Eval, NegationFlips) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, kPQ, i % 4);
    LassoWord w = random_lasso(rng, 2, 6);
    EXPECT_NE(eval_lasso(!f, w), eval_lasso(f, w));
  }
}

TEST(Eval, LoopShiftInvariance) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, kPQ, i % 4);
    LassoWord w = random_lasso(rng, 2, 6);
    for (std::size_t k = w.stem.size(); k < w.length(); ++k)
      EXPECT_EQ(eval_lasso(f, w, k), eval_lasso(f, w, k + w.loop.size()));
  }
}

TEST(Eval, DerivedOperatorExpansions) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, kPQ, i % 3);
    LassoWord w = random_lasso(rng, 2, 6);
    EXPECT_EQ(eval_lasso(eventually(f), w), eval_lasso(until(Formula::tt(), f), w));
    EXPECT_EQ(eval_lasso(always(f), w), !eval_lasso(eventually(!f), w));
  }
}

TEST(Nnf, PreservesSemantics) {
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    Formula f = random_formula(rng, kPQ, i % 4);
    Formula g = nnf(f);
    LassoWord w = random_lasso(rng, 2, 6);
    ASSERT_EQ(eval_lasso(f, w), eval_lasso(g, w)) << to_string(f) << " vs " << to_string(g);
  }
}

TEST(Nnf, NegationsOnlyOnAtoms) {
  Rng rng(17);
  std::function<bool(const Formula&)> ok = [&](const Formula& f) {
    if (f.op() == Op::kNot) return f.lhs().op() == Op::kAtom;
    if (f.op() == Op::kImplies) return false;
    if (f.is_unary()) return ok(f.lhs());
    if (f.is_binary()) return ok(f.lhs()) && ok(f.rhs());
    return true;
  };
  for (int i = 0; i < 500; ++i) EXPECT_TRUE(ok(nnf(random_formula(rng, kPQ, i % 4))));
}

TEST(Closure, Examples) {
  auto cp = closure(ltl("p"));
  ASSERT_EQ(cp.size(), 2u);
  EXPECT_NE(std::find(cp.begin(), cp.end(), ltl("p")), cp.end());
  EXPECT_NE(std::find(cp.begin(), cp.end(), ltl("!p")), cp.end());

  auto cx = closure(ltl("X p"));
  EXPECT_EQ(cx.size(), 4u);
  for (const char* s : {"X p", "!X p", "p", "!p"})
    EXPECT_NE(std::find(cx.begin(), cx.end(), ltl(s)), cx.end()) << s;

  // p U q, !(p U q), p, !p, q, !q
  EXPECT_EQ(closure(ltl("p U q")).size(), 6u);
}

TEST(Closure, ClosedUnderNegationAndSubformulas) {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_formula(rng, kPQ, i % 4);
    auto c = closure(f);
    auto has = [&](const Formula& g) { return std::binary_search(c.begin(), c.end(), g); };
    EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
    for (const auto& g : c) {
      EXPECT_TRUE(has(negate(g)));
      if (g.is_unary() && g.op() != Op::kNot) {
        EXPECT_TRUE(has(g.lhs()));
      }
      if (g.is_binary()) {
        EXPECT_TRUE(has(g.lhs()));
        EXPECT_TRUE(has(g.rhs()));
      }
    }
  }
}

TEST(Vocabulary, SortedAndDeduplicated) {
  Vocabulary v({"q", "p", "q"});
  EXPECT_EQ(v.names(), (std::vector<std::string>{"p", "q"}));
  EXPECT_EQ(v.letter({"q"}), Letter{2});
  EXPECT_THROW(v.letter({"r"}), Error);
}

}  // namespace
