#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cfl/atom.hpp"

namespace cfl {

enum class Connective : std::uint8_t {
  Atom,
  Not,
  And,
  Or,
  Implies,         // material conditional, "->"
  Strict,          // strict conditional, "=>"
  Counterfactual,  // "[]->"
};

// Immutable formula tree with value semantics. Copies share structure.
class Formula {
 public:
  static Formula atom(Atom a);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula strict(Formula lhs, Formula rhs);
  static Formula counterfactual(Formula antecedent, Formula consequent);

  Connective kind() const noexcept;
  bool is_atom() const noexcept { return kind() == Connective::Atom; }

  // Preconditions: is_atom() for as_atom(); kind() == Not for operand();
  // a binary connective for lhs()/rhs().
  Atom as_atom() const;
  const Formula& operand() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t size() const noexcept;
  std::size_t depth() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula binary(Connective kind, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

// Parses the ASCII surface syntax (~ & | -> []-> =>); the Unicode forms
// ¬ ∧ ∨ → □→ ⇒ are accepted as aliases. Throws ParseError.
Formula parse(std::string_view text);

// Canonical rendering. parse(print(f)) == f for every formula. Conditionals
// standing under "=>" and compound antecedents of "->"/"[]->" are bracketed
// the way the proof lines are written; all other parentheses are minimal.
std::string print(const Formula& f);

std::ostream& operator<<(std::ostream& os, const Formula& f);

struct NormalFormCheck {
  bool ok = true;
  std::string diagnostic;  // first violation, empty when ok
  explicit operator bool() const noexcept { return ok; }
};

// At most one "=>", only at the root, and every "[]->" antecedent is a single
// choice atom.
NormalFormCheck check_paper_normal(const Formula& f);

// True if f uses only atoms, ~, &, | and ->.
bool is_rudimentary(const Formula& f);

// Operands of a maximal chain of "&", left to right.
std::vector<Formula> conjuncts(const Formula& f);

// Every atom occurrence, in left-to-right order.
std::vector<Atom> atom_occurrences(const Formula& f);

}  // namespace cfl
