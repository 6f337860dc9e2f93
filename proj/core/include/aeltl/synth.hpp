#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "aeltl/checker.hpp"
#include "aeltl/domain.hpp"
#include "aeltl/games.hpp"

namespace aeltl {

struct SynthesisOptions {
  // Upper bound on arena nodes before the acceptance gadget; exceeded -> Error.
  std::size_t max_game_nodes = 4'000'000;
};

struct SynthesisResult {
  bool solvable = false;
  std::optional<FiniteMemoryPlan> plan;
  std::size_t game_nodes = 0;
  int parity_index = 0;
  ParityGame game;
  Solution solution;
  // Game nodes won by Odd (filled when unsolvable).
  std::vector<int> odd_region;
};

// Plan exists iff Even wins the synthesis game from its root. The plan's
// memory is the non-domain part of the nodes Even's strategy visits.
SynthesisResult synthesize(const PlanningDomain& d, const Goal& g,
                           const SynthesisOptions& o = {});

enum class FqMode { kStrong, kWeak, kStrongCyclic };
enum class GqMode { kStrong, kWeak, kStrongReachMaintain };

// Fixpoint planners for F q (A / E / AE) and G q (A / E / EA) with q
// propositional. Plans are memoryless.
SynthesisResult plan_fq(const PlanningDomain& d, const Formula& q, FqMode mode);
SynthesisResult plan_gq(const PlanningDomain& d, const Formula& q, GqMode mode);

Canonical canonical_for(FqMode m);
Canonical canonical_for(GqMode m);

}  // namespace aeltl
