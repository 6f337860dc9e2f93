#include "aeltl/quantifier.hpp"

#include "aeltl/error.hpp"

namespace aeltl {

namespace {

bool is_letter(char c) { return c == 'A' || c == 'E'; }

std::string collapse(const std::string& w) {
  std::string out;
  for (char c : w)
    if (out.empty() || out.back() != c) out += c;
  return out;
}

// Direct edges of the diagram: a implies b.
constexpr std::pair<Canonical, Canonical> kEdges[] = {
    {Canonical::kA, Canonical::kAEA},    {Canonical::kAEA, Canonical::kAEw},
    {Canonical::kAEw, Canonical::kAE},   {Canonical::kAEA, Canonical::kEA},
    {Canonical::kAEw, Canonical::kEAw},  {Canonical::kAE, Canonical::kEAE},
    {Canonical::kEA, Canonical::kEAw},   {Canonical::kEAw, Canonical::kEAE},
    {Canonical::kEAE, Canonical::kE},
};

std::array<std::array<bool, 8>, 8> build_closure() {
  std::array<std::array<bool, 8>, 8> r{};
  for (int i = 0; i < 8; ++i) r[i][i] = true;
  for (auto [a, b] : kEdges) r[static_cast<int>(a)][static_cast<int>(b)] = true;
  for (int k = 0; k < 8; ++k)
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

}  // namespace

PathQuantifier parse_quantifier(std::string_view text) {
  PathQuantifier q;
  std::size_t i = 0;
  while (i < text.size() && is_letter(text[i])) q.prefix += text[i++];
  if (i < text.size()) {
    if (text[i] != '(') {
      throw ParseError("unexpected '" + std::string(1, text[i]) + "' in quantifier at offset " +
                           std::to_string(i),
                       i);
    }
    ++i;
    while (i < text.size() && is_letter(text[i])) q.period += text[i++];
    if (q.period.empty()) throw ParseError("empty period at offset " + std::to_string(i), i);
    if (text.substr(i, 3) != ")^w") {
      throw ParseError("expected ')^w' at offset " + std::to_string(i), i);
    }
    i += 3;
    if (i != text.size()) {
      throw ParseError("trailing input in quantifier at offset " + std::to_string(i), i);
    }
  }
  if (q.prefix.empty() && q.period.empty()) throw ParseError("empty quantifier", 0);
  return q;
}

std::string to_string(const PathQuantifier& q) {
  if (q.period.empty()) return q.prefix;
  return q.prefix + "(" + q.period + ")^w";
}

Canonical normalize(const PathQuantifier& q) {
  std::string prefix = collapse(q.prefix);
  std::string period = collapse(q.period);
  if (!period.empty()) {
    bool both = period.find('A') != std::string::npos && period.find('E') != std::string::npos;
    if (both) {
      char first = prefix.empty() ? period.front() : prefix.front();
      return first == 'A' ? Canonical::kAEw : Canonical::kEAw;
    }
    prefix += period.front();
  }
  std::string w = collapse(prefix);
  while (w.size() > 3) {
    auto pos = w.find(w[0] == 'A' ? "AEAE" : "EAEA");
    if (pos == std::string::npos) pos = w.find(w[0] == 'A' ? "EAEA" : "AEAE");
    w.erase(pos + 2, 2);
  }
  if (w == "A") return Canonical::kA;
  if (w == "E") return Canonical::kE;
  if (w == "AE") return Canonical::kAE;
  if (w == "EA") return Canonical::kEA;
  if (w == "AEA") return Canonical::kAEA;
  return Canonical::kEAE;
}

bool implies(Canonical a, Canonical b) {
  static const auto closure = build_closure();
  return closure[static_cast<int>(a)][static_cast<int>(b)];
}

std::string_view to_string(Canonical c) {
  switch (c) {
    case Canonical::kA: return "A";
    case Canonical::kE: return "E";
    case Canonical::kAE: return "AE";
    case Canonical::kEA: return "EA";
    case Canonical::kAEA: return "AEA";
    case Canonical::kEAE: return "EAE";
    case Canonical::kAEw: return "(AE)^w";
    case Canonical::kEAw: return "(EA)^w";
  }
  return "?";
}

std::optional<Canonical> canonical_from_string(std::string_view s) {
  for (Canonical c : kAllCanonical)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

PathQuantifier as_word(Canonical c) {
  switch (c) {
    case Canonical::kAEw: return {"", "AE"};
    case Canonical::kEAw: return {"", "EA"};
    default: return {std::string(to_string(c)), ""};
  }
}

bool is_finite(Canonical c) { return c != Canonical::kAEw && c != Canonical::kEAw; }

}  // namespace aeltl
