#include <gtest/gtest.h>

#include <random>
#include <string>

#include "cfl/error.hpp"
#include "cfl/formula.hpp"
#include "support.hpp"

namespace cfl {
namespace {

Formula A(const char* s) { return Formula::atom(*atom_from_string(s)); }

ParseError::Kind parse_error_kind(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ParseError for: " << text;
  return ParseError::Kind::Syntax;
}

TEST(Atom, TwelveDistinctAtoms) {
  const auto& all = Atom::all();
  ASSERT_EQ(all.size(), 12u);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].index(), i);
    EXPECT_EQ(Atom::from_index(i), all[i]);
    EXPECT_EQ(atom_from_string(to_string(all[i])), all[i]);
    for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_NE(all[i], all[j]);
  }
  EXPECT_FALSE(atom_from_string("L3"));
  EXPECT_FALSE(atom_from_string("X1"));
  EXPECT_FALSE(atom_from_string("R1*"));
}

TEST(Parse, LineOneStructure) {
  const Formula f = parse("L2 & R2 & L2+ => (R1 []-> L2 & R1 & L2+)");
  const Formula expected = Formula::strict(
      Formula::conjunction(Formula::conjunction(A("L2"), A("R2")), A("L2+")),
      Formula::counterfactual(A("R1"),
                              Formula::conjunction(Formula::conjunction(A("L2"), A("R1")),
                                                   A("L2+"))));
  EXPECT_EQ(f, expected);
}

TEST(Parse, SingleAtom) { EXPECT_EQ(parse("L1"), A("L1")); }

TEST(Parse, NegatedImplication) {
  EXPECT_EQ(parse("~(L1- -> R1 & R1-)"),
            Formula::negation(Formula::implication(A("L1-"), Formula::conjunction(A("R1"), A("R1-")))));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse("L1 & L2 | R1"),
            Formula::disjunction(Formula::conjunction(A("L1"), A("L2")), A("R1")));
  EXPECT_EQ(parse("L1 | L2 & R1"),
            Formula::disjunction(A("L1"), Formula::conjunction(A("L2"), A("R1"))));
  EXPECT_EQ(parse("~L1 & L2"), Formula::conjunction(Formula::negation(A("L1")), A("L2")));
  EXPECT_EQ(parse("L1 | L2 -> R1"),
            Formula::implication(Formula::disjunction(A("L1"), A("L2")), A("R1")));
  EXPECT_EQ(parse("L1 -> R1 => L2"),
            Formula::strict(Formula::implication(A("L1"), A("R1")), A("L2")));
  EXPECT_EQ(parse("L1 & L2 & R1"),
            Formula::conjunction(Formula::conjunction(A("L1"), A("L2")), A("R1")));
}

TEST(Parse, OutcomeAtomsAreSingleTokens) {
  EXPECT_EQ(parse("L1-"), A("L1-"));
  EXPECT_EQ(parse("R2+&L1-"), Formula::conjunction(A("R2+"), A("L1-")));
  EXPECT_EQ(parse("L1->R1"), Formula::implication(A("L1"), A("R1")));
  EXPECT_EQ(parse("L1- ->R1"), Formula::implication(A("L1-"), A("R1")));
}

TEST(Parse, UnicodeAliases) {
  EXPECT_EQ(parse("¬L1 ∧ L2 ∨ R1"), parse("~L1 & L2 | R1"));
  EXPECT_EQ(parse("L1 → R1"), parse("L1 -> R1"));
  EXPECT_EQ(parse("L2 ⇒ (R1 □→ R1-)"), parse("L2 => (R1 []-> R1-)"));
  EXPECT_EQ(parse("R1 □-> R1-"), parse("R1 []-> R1-"));
}

TEST(Parse, MixingConditionalsIsRejected) {
  EXPECT_EQ(parse_error_kind("L1 -> R1 []-> R2"), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error_kind("R1 []-> R1 -> R2"), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error_kind("L1 -> R1 -> R2"), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error_kind("L1 => R1 => R2"), ParseError::Kind::Syntax);
  EXPECT_NO_THROW(parse("(L1 -> R1) []-> R2"));
  EXPECT_NO_THROW(parse("L1 -> (R1 []-> R2)"));
}

TEST(Parse, ErrorKindsAndPositions) {
  EXPECT_EQ(parse_error_kind("L3"), ParseError::Kind::Lex);
  EXPECT_EQ(parse_error_kind("L1 # R1"), ParseError::Kind::Lex);
  EXPECT_EQ(parse_error_kind("L1x"), ParseError::Kind::Lex);
  EXPECT_EQ(parse_error_kind("L1 &"), ParseError::Kind::Arity);
  EXPECT_EQ(parse_error_kind("& L1"), ParseError::Kind::Arity);
  EXPECT_EQ(parse_error_kind("~"), ParseError::Kind::Arity);
  EXPECT_EQ(parse_error_kind(""), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error_kind("(L1"), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error_kind("L1 R1"), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_error_kind("L1)"), ParseError::Kind::Syntax);
  try {
    parse("L1 & R9");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(std::string(e.what()).find("offset 5"), std::string::npos);
  }
}

TEST(Parse, DeepNestingIsAnErrorNotACrash) {
  std::string deep(100000, '(');
  deep += "L1";
  deep += std::string(100000, ')');
  EXPECT_THROW(parse(deep), ParseError);
  std::string negs(100000, '~');
  negs += "L1";
  EXPECT_THROW(parse(negs), ParseError);
  std::string ok(500, '(');
  ok += "L1";
  ok += std::string(500, ')');
  EXPECT_EQ(parse(ok), A("L1"));
}

TEST(Parse, TotalOnRandomBytes) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "LR12+-~&|()[]=>< x\xc2\xac";
  std::uniform_int_distribution<std::size_t> len(0, 24);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    const std::size_t n = len(rng);
    for (std::size_t k = 0; k < n; ++k) s += alphabet[ch(rng)];
    try {
      const Formula f = parse(s);
      EXPECT_EQ(parse(print(f)), f) << s;
    } catch (const ParseError& e) {
      EXPECT_LE(e.position(), s.size()) << s;
    }
  }
}

TEST(Print, Examples) {
  EXPECT_EQ(print(A("L1")), "L1");
  EXPECT_EQ(print(Formula::counterfactual(A("R1"), Formula::conjunction(A("R1"), A("R1-")))),
            "R1 []-> R1 & R1-");
  EXPECT_EQ(print(parse("L2 => ((R2 & R2+) -> (R1 []-> R1 & R1-))")),
            "L2 => ((R2 & R2+) -> (R1 []-> R1 & R1-))");
  EXPECT_EQ(print(parse("L1 & L2 | R1")), "L1 & L2 | R1");
  EXPECT_EQ(print(parse("(L1 | L2) & R1")), "(L1 | L2) & R1");
  EXPECT_EQ(print(parse("L1 & (L2 & R1)")), "L1 & (L2 & R1)");
  EXPECT_EQ(print(parse("~~L1")), "~~L1");
  EXPECT_EQ(print(parse("~(L1 & R1)")), "~(L1 & R1)");
}

TEST(Print, LineNineRoundTrip) {
  const std::string line9 = "L1 & R2 & L1- => (R1 []-> R1 & R1-)";
  const Formula f = parse(line9);
  EXPECT_EQ(parse(print(f)), f);
  EXPECT_EQ(print(f), line9);
}

TEST(Print, RoundTripRandom) {
  std::mt19937_64 rng(20240501);
  for (int i = 0; i < 10000; ++i) {
    const Formula f = test::random_formula(rng, 6);
    const std::string s = print(f);
    Formula g = A("L1");
    ASSERT_NO_THROW(g = parse(s)) << s;
    ASSERT_EQ(g, f) << s;
  }
}

TEST(NormalForm, Examples) {
  EXPECT_TRUE(check_paper_normal(parse("L2 & R2 & R2+ => (R1 []-> L2 & R1 & R1-)")));
  const auto nested = check_paper_normal(
      Formula::strict(Formula::strict(A("L1"), A("L2")), A("R1")));
  EXPECT_FALSE(nested);
  EXPECT_FALSE(nested.diagnostic.empty());
  const auto cf = check_paper_normal(
      Formula::counterfactual(Formula::conjunction(A("R1"), A("L1")), A("R1-")));
  EXPECT_FALSE(cf);
  EXPECT_FALSE(cf.diagnostic.empty());
  EXPECT_FALSE(check_paper_normal(parse("L1 => (R1- []-> R1)")));
  EXPECT_TRUE(check_paper_normal(parse("L1 & R1")));
}

TEST(Formula, Helpers) {
  const Formula f = parse("L1 & R2 & L1- => (R1 []-> R1 & R1-)");
  EXPECT_EQ(f.kind(), Connective::Strict);
  EXPECT_EQ(conjuncts(f.lhs()).size(), 3u);
  EXPECT_EQ(atom_occurrences(f).size(), 6u);
  EXPECT_EQ(f.size(), 11u);
  EXPECT_TRUE(is_rudimentary(parse("~L1 | (R1 -> R1-)")));
  EXPECT_FALSE(is_rudimentary(f));
  EXPECT_NE(parse("L1 & R1"), parse("R1 & L1"));
}

}  // namespace
}  // namespace cfl
