#include <algorithm>
#include <array>
#include <map>

#include "aeltl/domain.hpp"
#include "aeltl/error.hpp"

namespace aeltl {

namespace {

constexpr int kBlocks = 3;
constexpr int kTable = -1;
constexpr char kBlockName[kBlocks] = {'A', 'B', 'C'};

// on[x] is the block under x, or kTable.
using Config = std::array<int, kBlocks>;

bool well_formed(const Config& c) {
  for (int x = 0; x < kBlocks; ++x) {
    if (c[x] == x) return false;
    for (int y = x + 1; y < kBlocks; ++y)
      if (c[x] != kTable && c[x] == c[y]) return false;
    // No cycles: following `on` must reach the table.
    int cur = x;
    for (int steps = 0; cur != kTable; ++steps) {
      if (steps > kBlocks) return false;
      cur = c[cur];
    }
  }
  return true;
}

bool clear(const Config& c, int x) {
  for (int y = 0; y < kBlocks; ++y)
    if (c[y] == x) return false;
  return true;
}

int bottom(const Config& c, int x) {
  while (c[x] != kTable) x = c[x];
  return x;
}

// Towers listed bottom to top, joined by '_', e.g. "AB_C" has B on A.
std::string config_name(const Config& c) {
  std::vector<std::string> towers;
  for (int x = 0; x < kBlocks; ++x) {
    if (c[x] != kTable) continue;
    std::string t(1, kBlockName[x]);
    for (int top = x;;) {
      int above = -1;
      for (int y = 0; y < kBlocks; ++y)
        if (c[y] == top) above = y;
      if (above < 0) break;
      t += kBlockName[above];
      top = above;
    }
    towers.push_back(t);
  }
  std::sort(towers.begin(), towers.end());
  std::string out;
  for (std::size_t i = 0; i < towers.size(); ++i) out += (i ? "_" : "") + towers[i];
  return out;
}

int tower_count(const Config& c) {
  return static_cast<int>(std::count(c.begin(), c.end(), kTable));
}

}  // namespace

PlanningDomain gen_blocks_world() {
  std::vector<Config> configs;
  for (int a = -1; a < kBlocks; ++a)
    for (int b = -1; b < kBlocks; ++b)
      for (int c = -1; c < kBlocks; ++c) {
        Config cfg{a, b, c};
        if (well_formed(cfg)) configs.push_back(cfg);
      }
  // All-on-table first, then two-block towers, then full towers.
  std::sort(configs.begin(), configs.end(), [](const Config& x, const Config& y) {
    if (tower_count(x) != tower_count(y)) return tower_count(x) > tower_count(y);
    return config_name(x) < config_name(y);
  });

  std::vector<std::string> states;
  for (const auto& c : configs) states.push_back(config_name(c));

  std::vector<std::string> actions;
  for (int x = 0; x < kBlocks; ++x)
    for (int y = 0; y < kBlocks; ++y)
      if (x != y) actions.push_back(std::string("put_") + kBlockName[x] + "_on_" + kBlockName[y]);
  for (int x = 0; x < kBlocks; ++x)
    actions.push_back(std::string("put_") + kBlockName[x] + "_on_table");
  actions.push_back("wait");

  std::vector<std::string> atoms;
  for (int x = 0; x < kBlocks; ++x) {
    for (int y = 0; y < kBlocks; ++y)
      if (x != y) atoms.push_back(std::string(1, kBlockName[x]) + "_on_" + kBlockName[y]);
    atoms.push_back(std::string(1, kBlockName[x]) + "_on_table");
  }

  PlanningDomain d = PlanningDomain::make(states, actions, Vocabulary(atoms));
  std::map<Config, int> index;
  for (std::size_t i = 0; i < configs.size(); ++i) index[configs[i]] = static_cast<int>(i);
  const Config all_table{kTable, kTable, kTable};
  d.init = index.at(all_table);

  auto outcome_set = [&](std::vector<Config> cs) {
    std::vector<int> t;
    for (const auto& c : cs) t.push_back(index.at(c));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
  };

  for (std::size_t s = 0; s < configs.size(); ++s) {
    const Config& c = configs[s];
    std::vector<std::string> label;
    for (int x = 0; x < kBlocks; ++x) {
      label.push_back(std::string(1, kBlockName[x]) + "_on_" +
                      (c[x] == kTable ? std::string("table") : std::string(1, kBlockName[c[x]])));
    }
    d.labels[s] = d.atoms.letter(label);

    int act = 0;
    for (int x = 0; x < kBlocks; ++x) {
      for (int y = 0; y < kBlocks; ++y) {
        if (x == y) continue;
        if (clear(c, x) && clear(c, y)) {
          Config ok = c;
          ok[x] = y;
          // Failure scatters the destination tower and the held block.
          Config fail = c;
          int base = bottom(c, y);
          for (int z = 0; z < kBlocks; ++z)
            if (bottom(c, z) == base) fail[z] = kTable;
          fail[x] = kTable;
          d.successors(static_cast<int>(s), act) = outcome_set({ok, fail});
        }
        ++act;
      }
    }
    for (int x = 0; x < kBlocks; ++x, ++act) {
      if (clear(c, x) && c[x] != kTable) {
        Config moved = c;
        moved[x] = kTable;
        d.successors(static_cast<int>(s), act) = outcome_set({moved});
      }
    }
    d.successors(static_cast<int>(s), act) = outcome_set({c, all_table});
  }
  d.definitions.push_back({"tower", parse_ltl("C_on_B & B_on_A & A_on_table", d.atoms)});
  d.definitions.push_back({"scattered", parse_ltl("A_on_table & B_on_table & C_on_table", d.atoms)});
  return d;
}

FiniteMemoryPlan blocks_world_plan(const PlanningDomain& blocks) {
  auto st = [&](const char* n) {
    int s = blocks.state_index(n);
    if (s < 0) throw Error(std::string("blocks-world state missing: ") + n);
    return s;
  };
  auto act = [&](const char* n) {
    int a = blocks.action_index(n);
    if (a < 0) throw Error(std::string("blocks-world action missing: ") + n);
    return a;
  };
  const int table = st("A_B_C");
  const int b_on_a = st("AB_C");
  const int tower = st("ABC");
  const int wait = act("wait");

  FiniteMemoryPlan p;
  p.memory = {"m0", "m1", "m2", "m3", "m4", "m5"};
  p.initial = 0;
  p.set(0, table, act("put_B_on_A"), 1);
  p.set(1, b_on_a, act("put_C_on_B"), 2);
  p.set(1, table, wait, 5);
  p.set(2, tower, act("put_C_on_table"), 3);
  p.set(2, table, wait, 5);
  p.set(3, b_on_a, act("put_B_on_table"), 4);
  p.set(4, table, wait, 5);
  for (int s = 0; s < static_cast<int>(blocks.num_states()); ++s) p.set(5, s, wait, 5);
  return p;
}

PlanningDomain gen_binary_tree() {
  PlanningDomain d = PlanningDomain::make({"i", "p", "q"}, {"step"}, Vocabulary({"i", "p", "q"}));
  d.init = 0;
  for (int s = 0; s < 3; ++s) {
    d.labels[s] = Letter{1} << s;
    d.successors(s, 0) = {1, 2};
  }
  return d;
}

PlanningDomain gen_realizability(const std::vector<std::string>& sigma) {
  if (sigma.empty()) throw Error("realizability domain needs a nonempty alphabet");
  Vocabulary atoms(sigma);
  if (atoms.size() != sigma.size()) throw Error("duplicate letters in alphabet");
  const auto& letters = atoms.names();
  for (const auto& l : letters)
    if (l == "e") throw Error("letter 'e' clashes with the environment action");

  std::vector<std::string> states{"init"};
  for (const auto& l : letters) {
    states.push_back(l + "_p");
    states.push_back(l + "_e");
  }
  std::vector<std::string> actions = letters;
  actions.push_back("e");
  PlanningDomain d = PlanningDomain::make(states, actions, atoms);
  const int k = static_cast<int>(letters.size());
  const int env = k;
  auto p_state = [](int l) { return 1 + 2 * l; };
  auto e_state = [](int l) { return 2 + 2 * l; };
  d.init = 0;
  for (int l = 0; l < k; ++l) {
    d.labels[p_state(l)] = Letter{1} << l;
    d.labels[e_state(l)] = Letter{1} << l;
  }
  for (int l2 = 0; l2 < k; ++l2) {
    d.successors(0, l2) = {e_state(l2)};
    for (int l = 0; l < k; ++l) d.successors(p_state(l), l2) = {e_state(l2)};
  }
  for (int l = 0; l < k; ++l) {
    std::vector<int> all;
    for (int l2 = 0; l2 < k; ++l2) all.push_back(p_state(l2));
    d.successors(e_state(l), env) = all;
  }
  return d;
}

PlanningDomain gen_single_state(const std::vector<std::string>& label, std::size_t num_actions) {
  std::vector<std::string> actions;
  for (std::size_t a = 0; a < num_actions; ++a) actions.push_back("a" + std::to_string(a));
  PlanningDomain d = PlanningDomain::make({"s0"}, actions, Vocabulary(label));
  d.labels[0] = d.atoms.letter(label);
  for (std::size_t a = 0; a < num_actions; ++a) d.successors(0, static_cast<int>(a)) = {0};
  return d;
}

}  // namespace aeltl
