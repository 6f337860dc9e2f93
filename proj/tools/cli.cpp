#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "aeltl/checker.hpp"
#include "aeltl/error.hpp"
#include "aeltl/random.hpp"
#include "aeltl/synth.hpp"

namespace aeltl::cli {

namespace {

using nlohmann::json;

// Signals a negative verdict after output has been written.
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

PlanningDomain load_domain(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  PlanningDomain d = parse_domain(read_file(path), &warnings);
  for (const auto& w : warnings) err << "warning: " << path << ": " << w << "\n";
  auto problems = validate(d);
  if (!problems.empty()) throw Error(path + ": " + problems.front());
  return d;
}

std::string node_name(const PlanningDomain& d, const FiniteMemoryPlan& p, const ExecutionGraph& g,
                      int v) {
  const ExecNode& n = g.nodes[static_cast<std::size_t>(v)];
  return d.states[static_cast<std::size_t>(n.state)] + "@" +
         p.memory[static_cast<std::size_t>(n.memory)];
}

json witness_json(const PlanningDomain& d, const FiniteMemoryPlan& p, const ExecutionGraph& g,
                  const CheckResult& r) {
  auto names = [&](const std::vector<int>& vs) {
    json a = json::array();
    for (int v : vs) a.push_back(node_name(d, p, g, v));
    return a;
  };
  switch (r.witness_kind) {
    case CheckResult::Witness::kLasso:
      return {{"kind", "lasso"}, {"stem", names(r.stem)}, {"loop", names(r.loop)}};
    case CheckResult::Witness::kNodes: return {{"kind", "nodes"}, {"nodes", names(r.nodes)}};
    case CheckResult::Witness::kNone: break;
  }
  return nullptr;
}

// Lasso text: positions separated by spaces, each `{a,b}` or `{}`, with a
// single `|` between stem and loop.
LassoWord parse_lasso_text(const std::string& text, const Vocabulary& atoms) {
  LassoWord w;
  bool in_loop = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '|') {
      if (in_loop) throw ParseError("second '|' in lasso at offset " + std::to_string(i), i);
      in_loop = true;
      ++i;
    } else if (c == '{') {
      auto close = text.find('}', i);
      if (close == std::string::npos) {
        throw ParseError("unterminated '{' in lasso at offset " + std::to_string(i), i);
      }
      Letter l = atoms.letter(split(text.substr(i + 1, close - i - 1), ','));
      (in_loop ? w.loop : w.stem).push_back(l);
      i = close + 1;
    } else {
      throw ParseError("unexpected '" + std::string(1, c) + "' in lasso at offset " +
                           std::to_string(i),
                       i);
    }
  }
  if (w.loop.empty()) throw ParseError("lasso needs a nonempty loop after '|'", text.size());
  return w;
}

// Atom names occurring in a formula or lasso text: identifiers other than
// the keywords and temporal operators.
std::vector<std::string> identifiers(const std::string& text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string id = text.substr(i, j - i);
      if (id != "X" && id != "F" && id != "G" && id != "U" && id != "true" && id != "false")
        out.push_back(id);
      i = j;
    } else {
      ++i;
    }
  }
  return out;
}

struct Options {
  bool json = false;
  std::string domain, plan, goal, out, emit_game;
  std::size_t memory_cap = SynthesisOptions{}.max_game_nodes;
  std::uint64_t seed = 1;
  // subcommand-specific
  std::string word, word2, formula, lasso, atoms, kind, letters;
  int states = 4, actions = 2, memory = 1;
};

int cmd_normalize(const Options& o, std::ostream& out) {
  Canonical c = normalize(parse_quantifier(o.word));
  if (o.json) {
    out << json{{"input", o.word}, {"canonical", to_string(c)}}.dump() << "\n";
  } else {
    out << to_string(c) << "\n";
  }
  return 0;
}

int cmd_implies(const Options& o, std::ostream& out) {
  Canonical a = normalize(parse_quantifier(o.word));
  Canonical b = normalize(parse_quantifier(o.word2));
  const bool r = implies(a, b);
  if (o.json) {
    out << json{{"from", to_string(a)}, {"to", to_string(b)}, {"implies", r}}.dump() << "\n";
  } else {
    out << (r ? "true" : "false") << "\n";
  }
  return r ? 0 : kNegative;
}

int cmd_eval(const Options& o, std::ostream& out) {
  std::vector<std::string> names =
      o.atoms.empty() ? identifiers(o.formula + " " + o.lasso) : split(o.atoms, ',');
  Vocabulary atoms(names);
  Formula f = parse_ltl(o.formula, atoms);
  LassoWord w = parse_lasso_text(o.lasso, atoms);
  const bool r = eval_lasso(f, w, 0);
  if (o.json) {
    out << json{{"formula", to_string(f)}, {"value", r}}.dump() << "\n";
  } else {
    out << (r ? "true" : "false") << "\n";
  }
  return r ? 0 : kNegative;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  PlanningDomain d = load_domain(o.domain, err);
  FiniteMemoryPlan p = o.plan.empty() ? lowest_action_plan(d) : parse_plan(read_file(o.plan), d);
  Goal g = parse_goal(o.goal, d);
  CheckResult r = check(d, p, g);
  if (o.json) {
    ExecutionGraph eg = product(d, p);
    out << json{{"verdict", r.verdict},
                {"canonical", to_string(r.canonical)},
                {"witness", witness_json(d, p, eg, r)}}
               .dump()
        << "\n";
  } else {
    out << (r.verdict ? "true" : "false") << " (" << to_string(r.canonical) << ")\n";
  }
  return r.verdict ? 0 : kNegative;
}

int cmd_synth(const Options& o, std::ostream& out, std::ostream& err) {
  PlanningDomain d = load_domain(o.domain, err);
  Goal g = parse_goal(o.goal, d);
  SynthesisOptions so;
  so.max_game_nodes = o.memory_cap;
  SynthesisResult r = synthesize(d, g, so);
  if (!o.emit_game.empty()) write_file(o.emit_game, dump(r.game, &r.solution));
  std::string plan_text = r.plan ? write_plan(*r.plan, d) : "";
  if (r.plan && !o.out.empty()) write_file(o.out, plan_text);
  if (o.json) {
    json j{{"solvable", r.solvable},
           {"plan_file", r.plan && !o.out.empty() ? json(o.out) : json(nullptr)},
           {"game_nodes", r.game_nodes},
           {"parity_index", r.parity_index}};
    out << j.dump() << "\n";
  } else if (r.solvable) {
    out << "solvable\n";
    if (o.out.empty()) out << plan_text;
  } else {
    out << "unsatisfiable\n";
  }
  return r.solvable ? 0 : kNegative;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
  std::string text;
  if (o.kind == "blocks") {
    text = write_domain(gen_blocks_world());
  } else if (o.kind == "bintree") {
    text = write_domain(gen_binary_tree());
  } else if (o.kind == "realizability") {
    text = write_domain(gen_realizability(split(o.letters, ',')));
  } else if (o.kind == "random") {
    Rng rng(o.seed);
    RandomDomainOptions ro;
    ro.states = o.states;
    ro.actions = o.actions;
    text = write_domain(random_domain(rng, ro));
  } else if (o.kind == "blocks-plan") {
    PlanningDomain d = gen_blocks_world();
    text = write_plan(blocks_world_plan(d), d);
  } else if (o.kind == "lowest-plan") {
    if (o.domain.empty()) throw Error("gen lowest-plan needs --domain");
    PlanningDomain d = load_domain(o.domain, err);
    text = write_plan(lowest_action_plan(d), d);
  } else if (o.kind == "random-plan") {
    if (o.domain.empty()) throw Error("gen random-plan needs --domain");
    PlanningDomain d = load_domain(o.domain, err);
    Rng rng(o.seed);
    text = write_plan(random_plan(rng, d, o.memory), d);
  } else {
    throw Error("unknown generator '" + o.kind + "'");
  }
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
    if (o.json) out << json{{"written", o.out}}.dump() << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planning with AE-LTL goals: quantifiers, checking and synthesis", "aeltl"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "JSON output on stdout");

  auto* normalize_cmd = app.add_subcommand("normalize", "Canonical form of a path quantifier");
  normalize_cmd->add_option("word", o.word, "quantifier, e.g. AEAE or A(EA)^w")->required();
  normalize_cmd->add_flag("--json", o.json);

  auto* implies_cmd = app.add_subcommand("implies", "Whether one quantifier implies another");
  implies_cmd->add_option("from", o.word)->required();
  implies_cmd->add_option("to", o.word2)->required();
  implies_cmd->add_flag("--json", o.json);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an LTL formula on a lasso word");
  eval_cmd->add_option("formula", o.formula)->required();
  eval_cmd->add_option("lasso", o.lasso, "e.g. \"{p} {} | {q}\"")->required();
  eval_cmd->add_option("--atoms", o.atoms, "comma-separated vocabulary");
  eval_cmd->add_flag("--json", o.json);

  auto* check_cmd = app.add_subcommand("check", "Check a plan against a goal");
  check_cmd->add_option("--domain", o.domain)->required();
  check_cmd->add_option("--plan", o.plan, "defaults to the lowest-action plan");
  check_cmd->add_option("--goal", o.goal)->required();
  check_cmd->add_flag("--json", o.json);

  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a plan for a goal");
  synth_cmd->add_option("--domain", o.domain)->required();
  synth_cmd->add_option("--goal", o.goal)->required();
  synth_cmd->add_option("--out", o.out, "plan file to write");
  synth_cmd->add_option("--emit-game", o.emit_game, "dump the solved game");
  synth_cmd->add_option("--memory-cap", o.memory_cap, "maximum synthesis game nodes");
  synth_cmd->add_flag("--json", o.json);

  auto* gen_cmd = app.add_subcommand("gen", "Generate domains and plans");
  gen_cmd
      ->add_option("kind", o.kind,
                   "blocks | bintree | realizability | random | blocks-plan | lowest-plan | "
                   "random-plan")
      ->required();
  gen_cmd->add_option("--letters", o.letters, "realizability alphabet, comma-separated");
  gen_cmd->add_option("--seed", o.seed);
  gen_cmd->add_option("--states", o.states);
  gen_cmd->add_option("--actions", o.actions);
  gen_cmd->add_option("--memory", o.memory);
  gen_cmd->add_option("--domain", o.domain);
  gen_cmd->add_option("--out", o.out);
  gen_cmd->add_flag("--json", o.json);

  std::vector<const char*> argv{"aeltl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (normalize_cmd->parsed()) return cmd_normalize(o, out);
    if (implies_cmd->parsed()) return cmd_implies(o, out);
    if (eval_cmd->parsed()) return cmd_eval(o, out);
    if (check_cmd->parsed()) return cmd_check(o, out, err);
    if (synth_cmd->parsed()) return cmd_synth(o, out, err);
    if (gen_cmd->parsed()) return cmd_gen(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace aeltl::cli
