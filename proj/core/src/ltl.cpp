#include "aeltl/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "aeltl/error.hpp"

namespace aeltl {

// ---------------------------------------------------------------- Vocabulary

Vocabulary::Vocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  if (names_.size() > kMaxAtoms) throw Error("too many atoms (max 64)");
}

int Vocabulary::index_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return -1;
  return static_cast<int>(it - names_.begin());
}

Letter Vocabulary::letter(const std::vector<std::string>& names) const {
  Letter l = 0;
  for (const auto& n : names) {
    int i = index_of(n);
    if (i < 0) throw Error("undeclared atom '" + n + "'");
    l |= Letter{1} << i;
  }
  return l;
}

std::vector<std::string> Vocabulary::names_of(Letter l) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (l >> i & 1) out.push_back(names_[i]);
  return out;
}

// ------------------------------------------------------------------- Formula

Formula Formula::atom(std::string name, int index) {
  auto n = std::make_shared<Node>();
  n->op = Op::kAtom;
  n->atom = index;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::tt() {
  static const Formula t(std::make_shared<Node>(Node{Op::kTrue, -1, {}, nullptr, nullptr}));
  return t;
}

Formula Formula::ff() {
  static const Formula f(std::make_shared<Node>(Node{Op::kFalse, -1, {}, nullptr, nullptr}));
  return f;
}

Formula Formula::unary(Op op, Formula child) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::make_shared<const Formula>(std::move(child));
  return Formula(std::move(n));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::make_shared<const Formula>(std::move(lhs));
  n->rhs = std::make_shared<const Formula>(std::move(rhs));
  return Formula(std::move(n));
}

bool Formula::is_unary() const {
  switch (op()) {
    case Op::kNot:
    case Op::kNext:
    case Op::kEventually:
    case Op::kAlways:
      return true;
    default:
      return false;
  }
}

bool Formula::is_binary() const {
  switch (op()) {
    case Op::kAnd:
    case Op::kOr:
    case Op::kImplies:
    case Op::kUntil:
    case Op::kRelease:
      return true;
    default:
      return false;
  }
}

bool Formula::is_temporal() const {
  switch (op()) {
    case Op::kNext:
    case Op::kUntil:
    case Op::kEventually:
    case Op::kAlways:
    case Op::kRelease:
      return true;
    default:
      return false;
  }
}

std::size_t Formula::size() const {
  std::size_t s = 1;
  if (is_unary() || is_binary()) s += lhs().size();
  if (is_binary()) s += rhs().size();
  return s;
}

std::size_t Formula::temporal_count() const {
  std::size_t s = is_temporal() ? 1 : 0;
  if (is_unary() || is_binary()) s += lhs().temporal_count();
  if (is_binary()) s += rhs().temporal_count();
  return s;
}

namespace {

void collect_atoms(const Formula& f, std::vector<int>& out) {
  if (f.op() == Op::kAtom) {
    out.push_back(f.atom());
    return;
  }
  if (f.is_unary() || f.is_binary()) collect_atoms(f.lhs(), out);
  if (f.is_binary()) collect_atoms(f.rhs(), out);
}

}  // namespace

std::vector<int> Formula::atoms() const {
  std::vector<int> out;
  collect_atoms(*this, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (a.op() == Op::kAtom) {
    if (auto c = a.atom() <=> b.atom(); c != 0) return c;
    return a.name() <=> b.name();
  }
  if (a.is_unary() || a.is_binary()) {
    if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
  }
  if (a.is_binary()) return a.rhs() <=> b.rhs();
  return std::strong_ordering::equal;
}

bool operator==(const Formula& a, const Formula& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

Formula operator!(const Formula& f) { return Formula::unary(Op::kNot, f); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::binary(Op::kAnd, a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::binary(Op::kOr, a, b); }
Formula implies(const Formula& a, const Formula& b) { return Formula::binary(Op::kImplies, a, b); }
Formula next(const Formula& f) { return Formula::unary(Op::kNext, f); }
Formula until(const Formula& a, const Formula& b) { return Formula::binary(Op::kUntil, a, b); }
Formula release(const Formula& a, const Formula& b) { return Formula::binary(Op::kRelease, a, b); }
Formula eventually(const Formula& f) { return Formula::unary(Op::kEventually, f); }
Formula always(const Formula& f) { return Formula::unary(Op::kAlways, f); }

// -------------------------------------------------------------------- Parser

namespace {

enum class Tok { kIdent, kTrue, kFalse, kNot, kNext, kEventually, kAlways, kUntil,
                 kAnd, kOr, kArrow, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word(s.substr(i, j - i));
      Tok k = Tok::kIdent;
      if (word == "true") k = Tok::kTrue;
      else if (word == "false") k = Tok::kFalse;
      else if (word == "X") k = Tok::kNext;
      else if (word == "F") k = Tok::kEventually;
      else if (word == "G") k = Tok::kAlways;
      else if (word == "U") k = Tok::kUntil;
      out.push_back({k, i, std::move(word)});
      i = j;
      continue;
    }
    switch (c) {
      case '!': out.push_back({Tok::kNot, i, "!"}); break;
      case '&': out.push_back({Tok::kAnd, i, "&"}); break;
      case '|': out.push_back({Tok::kOr, i, "|"}); break;
      case '(': out.push_back({Tok::kLParen, i, "("}); break;
      case ')': out.push_back({Tok::kRParen, i, ")"}); break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Tok::kArrow, i, "->"});
          ++i;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " +
                             std::to_string(i),
                         i);
    }
    ++i;
  }
  out.push_back({Tok::kEnd, s.size(), ""});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Vocabulary& atoms)
      : toks_(std::move(toks)), atoms_(atoms) {}

  Formula parse() {
    Formula f = parse_implies();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string m = msg.empty() ? "unexpected end of input" : msg;
    throw ParseError(m + " at offset " + std::to_string(t.offset), t.offset);
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::kArrow) {
      take();
      return implies(lhs, parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::kOr) {
      take();
      f = f | parse_and();
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (peek().kind == Tok::kAnd) {
      take();
      f = f & parse_until();
    }
    return f;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (peek().kind == Tok::kUntil) {
      take();
      return until(lhs, parse_until());
    }
    return lhs;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::kNot: take(); return !parse_unary();
      case Tok::kNext: take(); return next(parse_unary());
      case Tok::kEventually: take(); return eventually(parse_unary());
      case Tok::kAlways: take(); return always(parse_unary());
      default: return parse_primary();
    }
  }

  Formula parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kTrue: take(); return Formula::tt();
      case Tok::kFalse: take(); return Formula::ff();
      case Tok::kIdent: {
        int idx = atoms_.index_of(t.text);
        if (idx < 0) {
          throw ParseError("undeclared atom '" + t.text + "' at offset " + std::to_string(t.offset),
                           t.offset);
        }
        take();
        return Formula::atom(t.text, idx);
      }
      case Tok::kLParen: {
        take();
        Formula f = parse_implies();
        if (peek().kind != Tok::kRParen) fail("expected ')'");
        take();
        return f;
      }
      case Tok::kEnd: fail("");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Vocabulary& atoms_;
};

int level(Op op) {
  switch (op) {
    case Op::kImplies: return 1;
    case Op::kOr: return 2;
    case Op::kAnd: return 3;
    case Op::kUntil:
    case Op::kRelease: return 4;
    case Op::kNot:
    case Op::kNext:
    case Op::kEventually:
    case Op::kAlways: return 5;
    default: return 6;
  }
}

void render(const Formula& f, int ctx, std::string& out) {
  int lv = level(f.op());
  bool paren = lv < ctx;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::kAtom: out += f.name(); break;
    case Op::kTrue: out += "true"; break;
    case Op::kFalse: out += "false"; break;
    case Op::kNot: out += '!'; render(f.lhs(), 5, out); break;
    case Op::kNext: out += "X "; render(f.lhs(), 5, out); break;
    case Op::kEventually: out += "F "; render(f.lhs(), 5, out); break;
    case Op::kAlways: out += "G "; render(f.lhs(), 5, out); break;
    case Op::kAnd:
    case Op::kOr:
      render(f.lhs(), lv, out);
      out += f.op() == Op::kAnd ? " & " : " | ";
      render(f.rhs(), lv + 1, out);
      break;
    case Op::kImplies:
    case Op::kUntil:
    case Op::kRelease:
      render(f.lhs(), lv + 1, out);
      out += f.op() == Op::kImplies ? " -> " : f.op() == Op::kUntil ? " U " : " R ";
      render(f.rhs(), lv, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

Formula parse_ltl(std::string_view text, const Vocabulary& atoms) {
  return Parser(lex(text), atoms).parse();
}

std::string to_string(const Formula& f) {
  std::string out;
  render(f, 0, out);
  return out;
}

// --------------------------------------------------------------- Lasso words

std::size_t LassoWord::fold(std::size_t i) const {
  if (i < length()) return i;
  return stem.size() + (i - stem.size()) % loop.size();
}

std::size_t LassoWord::successor(std::size_t i) const {
  return i + 1 < length() ? i + 1 : stem.size();
}

Letter LassoWord::at(std::size_t i) const {
  i = fold(i);
  return i < stem.size() ? stem[i] : loop[i - stem.size()];
}

namespace {

using Table = std::vector<char>;

// Least (or greatest) fixpoint of val[j] = now[j] || (keep[j] && val[succ j])
// (resp. now[j] && ...), iterated backwards until stable.
Table fixpoint(const LassoWord& w, const Table& keep, const Table& now, bool greatest) {
  const std::size_t n = w.length();
  Table val(n, greatest ? 1 : 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = n; k-- > 0;) {
      char v = greatest ? (now[k] && (keep[k] || val[w.successor(k)]))
                        : (now[k] || (keep[k] && val[w.successor(k)]));
      if (v != val[k]) {
        val[k] = v;
        changed = true;
      }
    }
  }
  return val;
}

Table eval_table(const Formula& f, const LassoWord& w,
                 std::unordered_map<const void*, Table>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  const std::size_t n = w.length();
  Table out(n, 0);
  switch (f.op()) {
    case Op::kAtom:
      for (std::size_t k = 0; k < n; ++k) out[k] = (w.at(k) >> f.atom()) & 1;
      break;
    case Op::kTrue: std::fill(out.begin(), out.end(), 1); break;
    case Op::kFalse: break;
    case Op::kNot: {
      Table a = eval_table(f.lhs(), w, memo);
      for (std::size_t k = 0; k < n; ++k) out[k] = !a[k];
      break;
    }
    case Op::kAnd:
    case Op::kOr:
    case Op::kImplies: {
      Table a = eval_table(f.lhs(), w, memo);
      Table b = eval_table(f.rhs(), w, memo);
      for (std::size_t k = 0; k < n; ++k) {
        if (f.op() == Op::kAnd) out[k] = a[k] && b[k];
        else if (f.op() == Op::kOr) out[k] = a[k] || b[k];
        else out[k] = !a[k] || b[k];
      }
      break;
    }
    case Op::kNext: {
      Table a = eval_table(f.lhs(), w, memo);
      for (std::size_t k = 0; k < n; ++k) out[k] = a[w.successor(k)];
      break;
    }
    case Op::kUntil:
      out = fixpoint(w, eval_table(f.lhs(), w, memo), eval_table(f.rhs(), w, memo), false);
      break;
    case Op::kRelease: {
      // a R b: b holds up to and including the first a (or forever).
      Table a = eval_table(f.lhs(), w, memo);
      Table b = eval_table(f.rhs(), w, memo);
      out = fixpoint(w, a, b, true);
      break;
    }
    case Op::kEventually:
      out = fixpoint(w, Table(n, 1), eval_table(f.lhs(), w, memo), false);
      break;
    case Op::kAlways:
      out = fixpoint(w, Table(n, 0), eval_table(f.lhs(), w, memo), true);
      break;
  }
  memo.emplace(f.id(), out);
  return out;
}

}  // namespace

std::vector<char> eval_positions(const Formula& f, const LassoWord& w) {
  if (w.loop.empty()) throw Error("lasso loop must be nonempty");
  std::unordered_map<const void*, Table> memo;
  return eval_table(f, w, memo);
}

bool eval_lasso(const Formula& f, const LassoWord& w, std::size_t i) {
  return eval_positions(f, w)[w.fold(i)] != 0;
}

// ------------------------------------------------------- Closure and NNF

Formula negate(const Formula& f) {
  switch (f.op()) {
    case Op::kNot: return f.lhs();
    case Op::kTrue: return Formula::ff();
    case Op::kFalse: return Formula::tt();
    default: return !f;
  }
}

namespace {

void subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  if (f.is_unary() || f.is_binary()) subformulas(f.lhs(), out);
  if (f.is_binary()) subformulas(f.rhs(), out);
}

}  // namespace

std::vector<Formula> closure(const Formula& f) {
  std::vector<Formula> subs;
  subformulas(f, subs);
  std::vector<Formula> out;
  for (const auto& s : subs) {
    out.push_back(s);
    out.push_back(negate(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Formula mk_and(const Formula& a, const Formula& b) {
  if (a.op() == Op::kFalse || b.op() == Op::kFalse) return Formula::ff();
  if (a.op() == Op::kTrue) return b;
  if (b.op() == Op::kTrue) return a;
  if (a == b) return a;
  return a & b;
}

Formula mk_or(const Formula& a, const Formula& b) {
  if (a.op() == Op::kTrue || b.op() == Op::kTrue) return Formula::tt();
  if (a.op() == Op::kFalse) return b;
  if (b.op() == Op::kFalse) return a;
  if (a == b) return a;
  return a | b;
}

Formula mk_next(const Formula& a) {
  if (a.op() == Op::kTrue || a.op() == Op::kFalse) return a;
  return next(a);
}

Formula mk_until(const Formula& a, const Formula& b) {
  if (b.op() == Op::kTrue || b.op() == Op::kFalse) return b;
  if (a.op() == Op::kFalse) return b;
  if (a.op() == Op::kTrue) return eventually(b);
  return until(a, b);
}

Formula mk_release(const Formula& a, const Formula& b) {
  if (b.op() == Op::kTrue || b.op() == Op::kFalse) return b;
  if (a.op() == Op::kTrue) return b;
  if (a.op() == Op::kFalse) return always(b);
  return release(a, b);
}

Formula mk_eventually(const Formula& a) {
  if (a.op() == Op::kTrue || a.op() == Op::kFalse) return a;
  if (a.op() == Op::kEventually) return a;
  return eventually(a);
}

Formula mk_always(const Formula& a) {
  if (a.op() == Op::kTrue || a.op() == Op::kFalse) return a;
  if (a.op() == Op::kAlways) return a;
  return always(a);
}

Formula nnf_of(const Formula& f, bool neg) {
  switch (f.op()) {
    case Op::kAtom: return neg ? !f : f;
    case Op::kTrue: return neg ? Formula::ff() : Formula::tt();
    case Op::kFalse: return neg ? Formula::tt() : Formula::ff();
    case Op::kNot: return nnf_of(f.lhs(), !neg);
    case Op::kAnd:
      return neg ? mk_or(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                 : mk_and(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
    case Op::kOr:
      return neg ? mk_and(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                 : mk_or(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
    case Op::kImplies:
      return neg ? mk_and(nnf_of(f.lhs(), false), nnf_of(f.rhs(), true))
                 : mk_or(nnf_of(f.lhs(), true), nnf_of(f.rhs(), false));
    case Op::kNext: return mk_next(nnf_of(f.lhs(), neg));
    case Op::kUntil:
      return neg ? mk_release(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                 : mk_until(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
    case Op::kRelease:
      return neg ? mk_until(nnf_of(f.lhs(), true), nnf_of(f.rhs(), true))
                 : mk_release(nnf_of(f.lhs(), false), nnf_of(f.rhs(), false));
    case Op::kEventually:
      return neg ? mk_always(nnf_of(f.lhs(), true)) : mk_eventually(nnf_of(f.lhs(), false));
    case Op::kAlways:
      return neg ? mk_eventually(nnf_of(f.lhs(), true)) : mk_always(nnf_of(f.lhs(), false));
  }
  return f;
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_of(f, false); }

}  // namespace aeltl
