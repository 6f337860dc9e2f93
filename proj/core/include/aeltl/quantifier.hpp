#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace aeltl {

// prefix . period^omega over {A, E}; an empty period denotes a finite word.
struct PathQuantifier {
  std::string prefix;
  std::string period;

  bool finite() const { return period.empty(); }
  friend bool operator==(const PathQuantifier&, const PathQuantifier&) = default;
};

enum class Canonical : std::uint8_t { kA, kE, kAE, kEA, kAEA, kEAE, kAEw, kEAw };

inline constexpr std::array<Canonical, 8> kAllCanonical = {
    Canonical::kA,   Canonical::kAEA, Canonical::kAEw, Canonical::kAE,
    Canonical::kEA,  Canonical::kEAw, Canonical::kEAE, Canonical::kE};

// Grammar: [AE]* ( '(' [AE]+ ')^w' )?, total word nonempty.
PathQuantifier parse_quantifier(std::string_view text);
std::string to_string(const PathQuantifier& q);

// The unique canonical quantifier equivalent to q.
Canonical normalize(const PathQuantifier& q);

// Reflexive-transitive closure of the implication diagram.
bool implies(Canonical a, Canonical b);

std::string_view to_string(Canonical c);
std::optional<Canonical> canonical_from_string(std::string_view s);
PathQuantifier as_word(Canonical c);
bool is_finite(Canonical c);

}  // namespace aeltl
