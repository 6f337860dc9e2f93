#include <benchmark/benchmark.h>

#include "aeltl/automata.hpp"
#include "aeltl/checker.hpp"
#include "aeltl/random.hpp"
#include "aeltl/synth.hpp"

using namespace aeltl;

namespace {

const char* const kFormulas[] = {"G F p", "F G p", "G (p -> F q)", "F G p | G F q",
                                 "(p U q) & G F p"};

void BM_LtlToDpw(benchmark::State& state) {
  const Vocabulary v({"p", "q"});
  const Formula f = parse_ltl(kFormulas[state.range(0)], v);
  int states = 0;
  for (auto _ : state) {
    ParityWordAutomaton d = ltl_to_dpw(f);
    states = d.num_states;
    benchmark::DoNotOptimize(d);
  }
  state.SetLabel(kFormulas[state.range(0)]);
  state.counters["states"] = states;
}
BENCHMARK(BM_LtlToDpw)->DenseRange(0, 4);

void BM_SolveRandomGame(benchmark::State& state) {
  Rng rng(42);
  ParityGame g;
  const int n = static_cast<int>(state.range(0));
  std::uniform_int_distribution<int> node(0, n - 1), prio(0, 7), coin(0, 1);
  for (int v = 0; v < n; ++v) g.add_node(coin(rng) ? Player::kEven : Player::kOdd, prio(rng));
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < 3; ++k) g.add_edge(v, node(rng));
  for (auto _ : state) benchmark::DoNotOptimize(solve(g));
}
BENCHMARK(BM_SolveRandomGame)->RangeMultiplier(4)->Range(64, 16384);

void BM_CheckBinaryTree(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(strictness_table());
}
BENCHMARK(BM_CheckBinaryTree);

const char* const kBlocksGoals[] = {
    "AE . F ((C_on_B & B_on_A & A_on_table) & F (A_on_table & B_on_table & C_on_table))",
    "AEA . F ((C_on_B & B_on_A & A_on_table) & F (A_on_table & B_on_table & C_on_table))",
    "AE . F G (C_on_B & B_on_A & A_on_table)",
    "AEA . F G (C_on_B & B_on_A & A_on_table)",
    "(AE)^w . G F (C_on_B & B_on_A & A_on_table)",
};

void BM_SynthesizeBlocksWorld(benchmark::State& state) {
  const PlanningDomain d = gen_blocks_world();
  const Goal g = parse_goal(kBlocksGoals[state.range(0)], d.atoms);
  std::size_t nodes = 0;
  for (auto _ : state) {
    SynthesisResult r = synthesize(d, g);
    nodes = r.game_nodes;
    benchmark::DoNotOptimize(r);
  }
  state.SetLabel(to_string(normalize(g.quantifier)).data());
  state.counters["game_nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_SynthesizeBlocksWorld)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_RealizabilityScaling(benchmark::State& state) {
  std::vector<std::string> letters;
  for (int i = 0; i < state.range(0); ++i) letters.push_back("l" + std::to_string(i));
  const PlanningDomain d = gen_realizability(letters);
  const Goal g = parse_goal("A . G F l0", d.atoms);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(d, g));
}
BENCHMARK(BM_RealizabilityScaling)->DenseRange(1, 6)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
