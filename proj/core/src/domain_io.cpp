#include <algorithm>
#include <sstream>

#include "aeltl/domain.hpp"
#include "aeltl/error.hpp"

namespace aeltl {

namespace {

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t number;
  std::string head;  // text before ':'
  std::string body;  // text after ':'
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++number;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("line " + std::to_string(number) + ": expected ':'", 0, number);
    }
    out.push_back({number, std::string(trim(line.substr(0, colon))),
                   std::string(trim(line.substr(colon + 1)))});
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
  throw ParseError("line " + std::to_string(l.number) + ": " + msg, 0, l.number);
}

std::string join(const std::vector<std::string>& v, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

PlanningDomain parse_domain(std::string_view text, std::vector<std::string>* warnings) {
  auto lines = split_lines(text);
  std::vector<std::string> states;
  std::vector<std::string> init;
  std::vector<std::string> atom_names;
  std::vector<std::string> actions;
  const Line* states_line = nullptr;
  for (const auto& l : lines) {
    auto head = words(l.head);
    if (head.empty()) fail(l, "missing keyword");
    if (head[0] == "states" && head.size() == 1) {
      if (states_line) fail(l, "duplicate 'states'");
      states_line = &l;
      states = words(l.body);
      auto sorted = states;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(l, "duplicate state name");
    } else if (head[0] == "init" && head.size() == 1) {
      init = words(l.body);
      if (init.size() != 1) fail(l, "'init' takes exactly one state");
    } else if (head[0] == "atoms" && head.size() == 1) {
      for (auto& a : words(l.body)) atom_names.push_back(a);
    } else if (head[0] == "label" && head.size() == 2) {
      for (auto& a : words(l.body)) atom_names.push_back(a);
    } else if (head[0] == "action" && head.size() == 2) {
      if (std::find(actions.begin(), actions.end(), head[1]) != actions.end())
        fail(l, "duplicate action '" + head[1] + "'");
      actions.push_back(head[1]);
    } else if (head[0] == "define" && head.size() == 2) {
      // Parsed once all atoms are known.
    } else {
      fail(l, "unknown declaration '" + l.head + "'");
    }
  }
  if (!states_line) throw ParseError("missing 'states' declaration", 0, 0);
  if (init.empty()) throw ParseError("missing 'init' declaration", 0, 0);

  PlanningDomain d = PlanningDomain::make(states, actions, Vocabulary(atom_names));
  d.init = d.state_index(init[0]);
  if (d.init < 0) throw ParseError("unknown initial state '" + init[0] + "'", 0, 0);

  std::vector<char> labeled(d.num_states(), 0);
  for (const auto& l : lines) {
    auto head = words(l.head);
    if (head[0] == "label") {
      int s = d.state_index(head[1]);
      if (s < 0) fail(l, "unknown state '" + head[1] + "'");
      if (labeled[s]) fail(l, "duplicate label for '" + head[1] + "'");
      labeled[s] = 1;
      d.labels[s] = d.atoms.letter(words(l.body));
    } else if (head[0] == "action") {
      int a = d.action_index(head[1]);
      std::string_view body = l.body;
      while (!trim(body).empty()) {
        auto semi = body.find(';');
        std::string_view clause = trim(body.substr(0, semi));
        body = semi == std::string_view::npos ? std::string_view{} : body.substr(semi + 1);
        if (clause.empty()) continue;
        auto arrow = clause.find("->");
        if (arrow == std::string_view::npos) fail(l, "expected '->' in transition");
        auto src = words(clause.substr(0, arrow));
        auto dst = words(clause.substr(arrow + 2));
        if (src.size() != 1) fail(l, "expected one source state before '->'");
        int s = d.state_index(src[0]);
        if (s < 0) fail(l, "unknown state '" + src[0] + "'");
        if (d.applicable(s, a)) fail(l, "duplicate transition for '" + src[0] + "'");
        if (dst.empty()) fail(l, "empty successor list for '" + src[0] + "'");
        std::vector<int> t;
        for (const auto& name : dst) {
          int x = d.state_index(name);
          if (x < 0) fail(l, "unknown state '" + name + "'");
          t.push_back(x);
        }
        if (!std::is_sorted(t.begin(), t.end()) ||
            std::adjacent_find(t.begin(), t.end()) != t.end()) {
          if (warnings) {
            warnings->push_back("line " + std::to_string(l.number) +
                                ": successors of ('" + src[0] + "', '" + head[1] +
                                "') sorted into state order");
          }
          std::sort(t.begin(), t.end());
          t.erase(std::unique(t.begin(), t.end()), t.end());
        }
        d.successors(s, a) = std::move(t);
      }
    } else if (head[0] == "define") {
      const std::string& name = head[1];
      if (d.atoms.contains(name)) fail(l, "definition '" + name + "' shadows an atom");
      bool identifier = false;
      try {
        identifier = parse_ltl(name, Vocabulary({name})).op() == Op::kAtom;
      } catch (const Error&) {
      }
      if (!identifier) fail(l, "definition name '" + name + "' is not an identifier");
      for (const auto& def : d.definitions)
        if (def.name == name) fail(l, "duplicate definition '" + name + "'");
      try {
        d.definitions.push_back({name, parse_ltl(l.body, d.atoms)});
      } catch (const Error& e) {
        fail(l, "definition '" + name + "': " + e.what());
      }
    }
  }
  return d;
}

std::string write_domain(const PlanningDomain& d) {
  std::ostringstream out;
  out << "states: " << join(d.states) << "\n";
  out << "init: " << d.states.at(d.init) << "\n";
  out << "atoms: " << join(d.atoms.names()) << "\n";
  for (std::size_t s = 0; s < d.num_states(); ++s) {
    auto names = d.atoms.names_of(d.labels[s]);
    out << "label " << d.states[s] << ":";
    if (!names.empty()) out << " " << join(names);
    out << "\n";
  }
  for (std::size_t a = 0; a < d.num_actions(); ++a) {
    out << "action " << d.actions[a] << ":";
    bool first = true;
    for (std::size_t s = 0; s < d.num_states(); ++s) {
      const auto& t = d.successors(static_cast<int>(s), static_cast<int>(a));
      if (t.empty()) continue;
      out << (first ? " " : " ; ") << d.states[s] << " ->";
      for (int x : t) out << " " << d.states[x];
      first = false;
    }
    out << "\n";
  }
  for (const auto& def : d.definitions)
    out << "define " << def.name << ": " << to_string(def.formula) << "\n";
  return out.str();
}

FiniteMemoryPlan parse_plan(std::string_view text, const PlanningDomain& d) {
  auto lines = split_lines(text);
  FiniteMemoryPlan p;
  std::string initial;
  for (const auto& l : lines) {
    auto head = words(l.head);
    if (head.empty()) fail(l, "missing keyword");
    if (head[0] == "memory" && head.size() == 1) {
      p.memory = words(l.body);
    } else if (head[0] == "initial" && head.size() == 1) {
      auto w = words(l.body);
      if (w.size() != 1) fail(l, "'initial' takes exactly one memory state");
      initial = w[0];
    } else if (head[0] != "at") {
      fail(l, "unknown declaration '" + l.head + "'");
    }
  }
  if (p.memory.empty()) throw ParseError("missing 'memory' declaration", 0, 0);
  auto mem_index = [&](const std::string& name) -> int {
    auto it = std::find(p.memory.begin(), p.memory.end(), name);
    return it == p.memory.end() ? -1 : static_cast<int>(it - p.memory.begin());
  };
  p.initial = initial.empty() ? 0 : mem_index(initial);
  if (p.initial < 0) throw ParseError("unknown initial memory '" + initial + "'", 0, 0);
  for (const auto& l : lines) {
    auto head = words(l.head);
    if (head[0] != "at") continue;
    if (head.size() != 3) fail(l, "expected 'at <memory> <state>:'");
    auto body = words(l.body);
    if (body.size() != 4 || body[0] != "do" || body[2] != "goto")
      fail(l, "expected 'do <action> goto <memory>'");
    int m = mem_index(head[1]);
    int s = d.state_index(head[2]);
    int a = d.action_index(body[1]);
    int n = mem_index(body[3]);
    if (m < 0) fail(l, "unknown memory '" + head[1] + "'");
    if (s < 0) fail(l, "unknown state '" + head[2] + "'");
    if (a < 0) fail(l, "unknown action '" + body[1] + "'");
    if (n < 0) fail(l, "unknown memory '" + body[3] + "'");
    if (p.rule(m, s)) fail(l, "duplicate rule");
    p.set(m, s, a, n);
  }
  return p;
}

std::string write_plan(const FiniteMemoryPlan& p, const PlanningDomain& d) {
  std::ostringstream out;
  out << "memory: " << join(p.memory) << "\n";
  out << "initial: " << p.memory.at(p.initial) << "\n";
  for (const auto& [key, r] : p.rules) {
    out << "at " << p.memory[key.first] << " " << d.states[key.second] << ": do "
        << d.actions[r.action] << " goto " << p.memory[r.next] << "\n";
  }
  return out.str();
}

}  // namespace aeltl
