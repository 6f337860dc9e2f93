#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace aeltl {

// Bit i is set iff atom i of the governing vocabulary holds.
using Letter = std::uint64_t;

inline constexpr std::size_t kMaxAtoms = 64;

// Ordered, duplicate-free set of atom names. Index order is lexicographic.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> names);

  int index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name) >= 0; }
  const std::string& name(int index) const { return names_.at(index); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  // Names must all be declared; throws Error otherwise.
  Letter letter(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(Letter l) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> names_;
};

enum class Op : std::uint8_t {
  kAtom,
  kTrue,
  kFalse,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kNext,
  kUntil,
  kEventually,
  kAlways,
  // Dual of until. Only produced by nnf(); not part of the input grammar.
  kRelease,
};

// Immutable LTL syntax tree with shared subterms.
class Formula {
 public:
  static Formula atom(std::string name, int index);
  static Formula tt();
  static Formula ff();
  static Formula unary(Op op, Formula child);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  Op op() const { return node_->op; }
  // Atom index in the vocabulary the formula was built against.
  int atom() const { return node_->atom; }
  const std::string& name() const { return node_->name; }
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }
  bool is_unary() const;
  bool is_binary() const;
  bool is_temporal() const;

  std::size_t size() const;
  std::size_t temporal_count() const;
  // Atom indices occurring in the formula, ascending.
  std::vector<int> atoms() const;

  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    int atom = -1;
    std::string name;
    std::shared_ptr<const Formula> lhs;
    std::shared_ptr<const Formula> rhs;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// Convenience constructors.
Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);
Formula implies(const Formula& a, const Formula& b);
Formula next(const Formula& f);
Formula until(const Formula& a, const Formula& b);
Formula release(const Formula& a, const Formula& b);
Formula eventually(const Formula& f);
Formula always(const Formula& f);

// Grammar: atoms [a-zA-Z_][a-zA-Z0-9_]*, constants true/false, unary ! X F G,
// binary & | -> U. Precedence high to low: unary, U (right), &, |, -> (right).
// Throws ParseError with a byte offset, or Error for undeclared atoms.
Formula parse_ltl(std::string_view text, const Vocabulary& atoms);

// Minimal-parenthesis rendering; parse_ltl(to_string(f)) == f.
std::string to_string(const Formula& f);

// Infinite word stem . loop^omega over letters of some vocabulary.
struct LassoWord {
  std::vector<Letter> stem;
  std::vector<Letter> loop;

  std::size_t length() const { return stem.size() + loop.size(); }
  // Canonical position for any index; positions >= length() wrap into the loop.
  std::size_t fold(std::size_t i) const;
  std::size_t successor(std::size_t i) const;
  Letter at(std::size_t i) const;
};

// Truth of f at position i of w.
bool eval_lasso(const Formula& f, const LassoWord& w, std::size_t i = 0);
// Truth of f at every position 0..w.length()-1.
std::vector<char> eval_positions(const Formula& f, const LassoWord& w);

// Negation that cancels a leading !, and swaps true/false.
Formula negate(const Formula& f);

// All subformulas and their negations, sorted and duplicate-free.
std::vector<Formula> closure(const Formula& f);

// Negation normal form over {atom, !atom, true, false, &, |, X, U, R, F, G}
// with constant folding.
Formula nnf(const Formula& f);

}  // namespace aeltl
