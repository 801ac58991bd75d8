#include "cfl/formula.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "cfl/error.hpp"

namespace cfl {

// ---------------------------------------------------------------------------
// Atoms

char region_letter(Region r) noexcept { return r == Region::Left ? 'L' : 'R'; }
char setting_digit(Setting s) noexcept { return s == Setting::One ? '1' : '2'; }
char sign_char(Sign s) noexcept { return s == Sign::Plus ? '+' : '-'; }

std::size_t Atom::index() const noexcept { return static_cast<std::size_t>(index_key()); }

Atom Atom::from_index(std::size_t index) {
  if (index >= kCount) throw std::out_of_range("atom index out of range");
  if (index < 4) {
    return choice(static_cast<Region>(index / 2), static_cast<Setting>(index % 2));
  }
  std::size_t base = (index - 4) / 2;
  return outcome(static_cast<Region>(base / 2), static_cast<Setting>(base % 2),
                 static_cast<Sign>((index - 4) % 2));
}

const std::array<Atom, Atom::kCount>& Atom::all() {
  static const std::array<Atom, kCount> atoms = []<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<Atom, kCount>{Atom::from_index(I)...};
  }(std::make_index_sequence<kCount>{});
  return atoms;
}

std::string to_string(Atom atom) {
  std::string out{region_letter(atom.region()), setting_digit(atom.setting())};
  if (auto s = atom.sign()) out.push_back(sign_char(*s));
  return out;
}

std::optional<Atom> atom_from_string(std::string_view text) {
  if (text.size() < 2 || text.size() > 3) return std::nullopt;
  Region region;
  if (text[0] == 'L') {
    region = Region::Left;
  } else if (text[0] == 'R') {
    region = Region::Right;
  } else {
    return std::nullopt;
  }
  Setting setting;
  if (text[1] == '1') {
    setting = Setting::One;
  } else if (text[1] == '2') {
    setting = Setting::Two;
  } else {
    return std::nullopt;
  }
  if (text.size() == 2) return Atom::choice(region, setting);
  if (text[2] == '+') return Atom::outcome(region, setting, Sign::Plus);
  if (text[2] == '-') return Atom::outcome(region, setting, Sign::Minus);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Connective kind;
  Atom atom = Atom::choice(Region::Left, Setting::One);
  std::vector<Formula> children;
  std::size_t size = 1;
  std::size_t depth = 1;
};

Formula Formula::atom(Atom a) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Atom;
  node->atom = a;
  return Formula(std::move(node));
}

Formula Formula::negation(Formula operand) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::Not;
  node->size = operand.size() + 1;
  node->depth = operand.depth() + 1;
  node->children.push_back(std::move(operand));
  return Formula(std::move(node));
}

Formula Formula::binary(Connective kind, Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->size = lhs.size() + rhs.size() + 1;
  node->depth = std::max(lhs.depth(), rhs.depth()) + 1;
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  return Formula(std::move(node));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return binary(Connective::And, std::move(lhs), std::move(rhs));
}
Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return binary(Connective::Or, std::move(lhs), std::move(rhs));
}
Formula Formula::implication(Formula lhs, Formula rhs) {
  return binary(Connective::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::strict(Formula lhs, Formula rhs) {
  return binary(Connective::Strict, std::move(lhs), std::move(rhs));
}
Formula Formula::counterfactual(Formula antecedent, Formula consequent) {
  return binary(Connective::Counterfactual, std::move(antecedent), std::move(consequent));
}

Connective Formula::kind() const noexcept { return node_->kind; }

Atom Formula::as_atom() const {
  assert(is_atom());
  return node_->atom;
}

const Formula& Formula::operand() const {
  assert(kind() == Connective::Not);
  return node_->children[0];
}

const Formula& Formula::lhs() const {
  assert(node_->children.size() == 2);
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  assert(node_->children.size() == 2);
  return node_->children[1];
}

std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::depth() const noexcept { return node_->depth; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.is_atom()) return a.as_atom() == b.as_atom();
  const auto& ca = a.node_->children;
  const auto& cb = b.node_->children;
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { Atom, Not, And, Or, Implies, Counterfactual, Strict, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::size_t len;
  Atom atom = Atom::choice(Region::Left, Setting::One);
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Atom: return "atom";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Counterfactual: return "'[]->'";
    case Tok::Strict: return "'=>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool is_binary_operator(Tok t) {
  return t == Tok::And || t == Tok::Or || t == Tok::Implies || t == Tok::Counterfactual ||
         t == Tok::Strict;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, pos_, 0});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  Token take(Tok kind, std::size_t len) {
    Token t{kind, pos_, len};
    pos_ += len;
    return t;
  }

  Token next() {
    char c = text_[pos_];
    if (c == 'L' || c == 'R') return lex_atom();
    switch (c) {
      case '~': return take(Tok::Not, 1);
      case '&': return take(Tok::And, 1);
      case '|': return take(Tok::Or, 1);
      case '(': return take(Tok::LParen, 1);
      case ')': return take(Tok::RParen, 1);
      default: break;
    }
    if (starts_with("->")) return take(Tok::Implies, 2);
    if (starts_with("[]->")) return take(Tok::Counterfactual, 4);
    if (starts_with("=>")) return take(Tok::Strict, 2);
    // Unicode aliases (UTF-8).
    if (starts_with("¬")) return take(Tok::Not, 2);
    if (starts_with("∧")) return take(Tok::And, 3);
    if (starts_with("∨")) return take(Tok::Or, 3);
    if (starts_with("→")) return take(Tok::Implies, 3);
    if (starts_with("⇒")) return take(Tok::Strict, 3);
    if (starts_with("□→")) return take(Tok::Counterfactual, 6);
    if (starts_with("□->")) return take(Tok::Counterfactual, 5);
    throw ParseError(ParseError::Kind::Lex, pos_, "unknown token starting with '" +
                                                      std::string(1, c) + "'");
  }

  // Longest match: "L1-" is one token. A trailing '-' that begins "->" is
  // left for the operator so that "L1->R1" still reads as an implication.
  Token lex_atom() {
    std::size_t start = pos_;
    if (pos_ + 1 >= text_.size() || (text_[pos_ + 1] != '1' && text_[pos_ + 1] != '2')) {
      throw ParseError(ParseError::Kind::Lex, start,
                       "malformed atom: expected '1' or '2' after '" +
                           std::string(1, text_[pos_]) + "'");
    }
    std::size_t len = 2;
    if (pos_ + 2 < text_.size()) {
      char s = text_[pos_ + 2];
      bool arrow = s == '-' && pos_ + 3 < text_.size() && text_[pos_ + 3] == '>';
      if (s == '+' || (s == '-' && !arrow)) len = 3;
    }
    Token t{Tok::Atom, start, len};
    t.atom = *atom_from_string(text_.substr(start, len));
    pos_ += len;
    // An atom glued to further identifier characters ("L1x", "R23") is not an atom.
    if (pos_ < text_.size()) {
      char n = text_[pos_];
      if ((n >= 'A' && n <= 'Z') || (n >= 'a' && n <= 'z') || (n >= '0' && n <= '9') ||
          n == '_') {
        throw ParseError(ParseError::Kind::Lex, start,
                         "malformed atom '" + std::string(text_.substr(start, len + 1)) + "'");
      }
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Parser

constexpr std::size_t kMaxNesting = 2000;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula run() {
    if (peek().kind == Tok::End) {
      throw ParseError(ParseError::Kind::Syntax, peek().pos, "expected formula, found end of input");
    }
    Formula f = strict();
    if (peek().kind != Tok::End) {
      throw ParseError(ParseError::Kind::Syntax, peek().pos,
                       std::string("expected end of input, found ") + describe(peek().kind));
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token advance() { return toks_[i_++]; }

  Formula strict() {
    Formula lhs = binary();
    if (peek().kind != Tok::Strict) return lhs;
    advance();
    Formula rhs = binary();
    if (peek().kind == Tok::Strict) {
      throw ParseError(ParseError::Kind::Syntax, peek().pos,
                       "'=>' is non-associative; add parentheses");
    }
    return Formula::strict(std::move(lhs), std::move(rhs));
  }

  Formula binary() {
    Formula lhs = disj();
    Tok op = peek().kind;
    if (op != Tok::Implies && op != Tok::Counterfactual) return lhs;
    advance();
    Formula rhs = disj();
    Tok next = peek().kind;
    if (next == Tok::Implies || next == Tok::Counterfactual) {
      throw ParseError(ParseError::Kind::Syntax, peek().pos,
                       std::string(describe(op)) + " followed by " + describe(next) +
                           " is ambiguous; add parentheses");
    }
    return op == Tok::Implies ? Formula::implication(std::move(lhs), std::move(rhs))
                              : Formula::counterfactual(std::move(lhs), std::move(rhs));
  }

  Formula disj() {
    Formula f = conj();
    while (peek().kind == Tok::Or) {
      advance();
      f = Formula::disjunction(std::move(f), conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = neg();
    while (peek().kind == Tok::And) {
      advance();
      f = Formula::conjunction(std::move(f), neg());
    }
    return f;
  }

  Formula neg() {
    if (++nesting_ > kMaxNesting) {
      throw ParseError(ParseError::Kind::Syntax, peek().pos, "formula nested too deeply");
    }
    Formula f = primary();
    --nesting_;
    return f;
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        advance();
        return Formula::negation(neg());
      case Tok::LParen: {
        advance();
        Formula f = strict();
        if (peek().kind != Tok::RParen) {
          throw ParseError(ParseError::Kind::Syntax, peek().pos,
                           std::string("expected ')', found ") + describe(peek().kind));
        }
        advance();
        return f;
      }
      case Tok::Atom:
        advance();
        return Formula::atom(t.atom);
      default:
        break;
    }
    // Missing operand: either an operator has nothing on one side, or the
    // token stream is just malformed.
    if (is_binary_operator(t.kind)) {
      throw ParseError(ParseError::Kind::Arity, t.pos,
                       std::string("operator ") + describe(t.kind) + " is missing its left operand");
    }
    if (i_ > 0) {
      Tok prev = toks_[i_ - 1].kind;
      if (is_binary_operator(prev) || prev == Tok::Not) {
        throw ParseError(ParseError::Kind::Arity, toks_[i_ - 1].pos,
                         std::string("operator ") + describe(prev) +
                             " is missing its right operand (found " + describe(t.kind) + ")");
      }
    }
    throw ParseError(ParseError::Kind::Syntax, t.pos,
                     std::string("expected formula, found ") + describe(t.kind));
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::size_t nesting_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(Connective c) {
  switch (c) {
    case Connective::Strict: return 0;
    case Connective::Implies:
    case Connective::Counterfactual: return 1;
    case Connective::Or: return 2;
    case Connective::And: return 3;
    case Connective::Not: return 4;
    case Connective::Atom: return 5;
  }
  return 5;
}

const char* symbol(Connective c) {
  switch (c) {
    case Connective::And: return " & ";
    case Connective::Or: return " | ";
    case Connective::Implies: return " -> ";
    case Connective::Counterfactual: return " []-> ";
    case Connective::Strict: return " => ";
    default: return "";
  }
}

void print_into(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out.push_back('(');
  print_into(f, out);
  if (parens) out.push_back(')');
}

void print_into(const Formula& f, std::string& out) {
  const Connective k = f.kind();
  const int p = precedence(k);
  switch (k) {
    case Connective::Atom:
      out += to_string(f.as_atom());
      return;
    case Connective::Not:
      out.push_back('~');
      print_operand(f.operand(), precedence(f.operand().kind()) < p, out);
      return;
    case Connective::And:
    case Connective::Or:
      // Left-associative chains.
      print_operand(f.lhs(), precedence(f.lhs().kind()) < p, out);
      out += symbol(k);
      print_operand(f.rhs(), precedence(f.rhs().kind()) <= p, out);
      return;
    case Connective::Implies:
    case Connective::Counterfactual:
      // Antecedents are bracketed unless they are atoms or negations.
      print_operand(f.lhs(), precedence(f.lhs().kind()) <= precedence(Connective::And), out);
      out += symbol(k);
      print_operand(f.rhs(), precedence(f.rhs().kind()) <= p, out);
      return;
    case Connective::Strict:
      // Conditionals under "=>" are bracketed.
      print_operand(f.lhs(), precedence(f.lhs().kind()) <= precedence(Connective::Implies), out);
      out += symbol(k);
      print_operand(f.rhs(), precedence(f.rhs().kind()) <= precedence(Connective::Implies), out);
      return;
  }
}

// Preorder search for the first normal-form violation.
bool find_violation(const Formula& f, bool at_root, std::string& diag) {
  switch (f.kind()) {
    case Connective::Atom:
      return false;
    case Connective::Not:
      return find_violation(f.operand(), false, diag);
    case Connective::Strict:
      if (!at_root) {
        diag = "strict conditional below the root: " + print(f);
        return true;
      }
      break;
    case Connective::Counterfactual: {
      const Formula& a = f.lhs();
      if (!a.is_atom() || !a.as_atom().is_choice()) {
        diag = "counterfactual antecedent is not a single choice atom: " + print(a);
        return true;
      }
      break;
    }
    default:
      break;
  }
  return find_violation(f.lhs(), false, diag) || find_violation(f.rhs(), false, diag);
}

void collect_atoms(const Formula& f, std::vector<Atom>& out) {
  if (f.is_atom()) {
    out.push_back(f.as_atom());
  } else if (f.kind() == Connective::Not) {
    collect_atoms(f.operand(), out);
  } else {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}

void collect_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Connective::And) {
    collect_conjuncts(f.lhs(), out);
    collect_conjuncts(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print(f); }

NormalFormCheck check_paper_normal(const Formula& f) {
  NormalFormCheck result;
  result.ok = !find_violation(f, true, result.diagnostic);
  return result;
}

bool is_rudimentary(const Formula& f) {
  switch (f.kind()) {
    case Connective::Atom: return true;
    case Connective::Not: return is_rudimentary(f.operand());
    case Connective::And:
    case Connective::Or:
    case Connective::Implies: return is_rudimentary(f.lhs()) && is_rudimentary(f.rhs());
    default: return false;
  }
}

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  collect_conjuncts(f, out);
  return out;
}

std::vector<Atom> atom_occurrences(const Formula& f) {
  std::vector<Atom> out;
  collect_atoms(f, out);
  return out;
}

}  // namespace cfl
