#include <gtest/gtest.h>

#include "bd4/generators.hpp"
#include "bd4/parser.hpp"

namespace bd4 {
namespace {

Signature sig() {
  return Signature::parse(
      "pred P/1\npred Q/1\npred R/2\nconst c\nconst d\nfunc f/1\nfunc g/2\nprop p\nprop q\n"
      "prop r\nconn Des\nconn Both\n");
}

Formula parse(std::string_view text) { return parse_formula(text, sig()); }

TEST(Parser, GrammarProductions) {
  Formula p = Formula::prop("p");
  EXPECT_EQ(parse("~(p -> F)"), Formula::neg(Formula::implies(p, Formula::falsity())));
  EXPECT_EQ(parse("x != y"), Formula::neg(Formula::eq(Term::variable("x"), Term::variable("y"))));
  EXPECT_EQ(parse("T"), Formula::neg(Formula::falsity()));
}

TEST(Parser, QuantifierScopeExtendsRight) {
  Formula expected = Formula::forall(
      "x", Formula::conj(Formula::pred("P", {Term::variable("x")}), Formula::prop("q")));
  EXPECT_EQ(parse("forall x. P(x) & q"), expected);
  EXPECT_EQ(parse("p & exists x. P(x) | q"),
            Formula::conj(Formula::prop("p"),
                          Formula::exists("x", Formula::disj(Formula::pred("P", {Term::variable("x")}),
                                                             Formula::prop("q")))));
}

TEST(Parser, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse("~p & q | r -> p"), parse("(((~p) & q) | r) -> p"));
  EXPECT_EQ(parse("p -> q -> r"), parse("p -> (q -> r)"));
  EXPECT_EQ(parse("p & q & r"), parse("(p & q) & r"));
  EXPECT_EQ(parse("p | q | r"), parse("(p | q) | r"));
  EXPECT_EQ(parse("Des p & q"), parse("(Des p) & q"));
}

TEST(Parser, TermsAndConstants) {
  Formula a = parse("R(f(c), g(x, d))");
  ASSERT_EQ(a.op(), Op::Pred);
  EXPECT_TRUE(a.terms()[0].args()[0].is_constant());
  EXPECT_TRUE(a.terms()[1].args()[0].is_variable());
  EXPECT_EQ(parse("f(c) = c").op(), Op::Eq);
}

TEST(Parser, ErrorKindsAndPositions) {
  auto kind_of = [](std::string_view text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    return ParseError::Kind::Syntax;
  };
  EXPECT_EQ(kind_of("p $ q"), ParseError::Kind::Lexical);
  EXPECT_EQ(kind_of("P(c, d)"), ParseError::Kind::Arity);
  EXPECT_EQ(kind_of("f(c, d) = c"), ParseError::Kind::Arity);
  EXPECT_EQ(kind_of("s"), ParseError::Kind::UnknownSymbol);
  EXPECT_EQ(kind_of("S(c)"), ParseError::Kind::UnknownSymbol);
  EXPECT_EQ(kind_of("Norm p"), ParseError::Kind::UnknownSymbol);
  EXPECT_EQ(kind_of("forall . P(x)"), ParseError::Kind::Quantifier);
  EXPECT_EQ(kind_of("forall x P(x)"), ParseError::Kind::Quantifier);
  EXPECT_EQ(kind_of("forall c. P(c)"), ParseError::Kind::Quantifier);
  try {
    parse("p & $");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  try {
    parse("p & (q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(Parser, InferenceDeclaresSymbols) {
  Signature s;
  Formula a = parse_formula_infer("forall x. S(x, h(k)) -> w & Norm w", s);
  EXPECT_EQ(s.predicate_arity("S"), 2);
  EXPECT_EQ(s.function_arity("h"), 1);
  EXPECT_EQ(s.predicate_arity("w"), 0);
  EXPECT_TRUE(s.enabled(Connective::Norm));
  EXPECT_FALSE(s.declares("k"));  // an undeclared bare term is a variable
  EXPECT_EQ(free_vars(a), (VarSet{"k"}));
  EXPECT_THROW(parse_formula_infer("S(x) & S(x, x)", s), ParseError);
}

TEST(Parser, Sequents) {
  Sequent s = parse_sequent("p, q |- r; p", sig());
  EXPECT_EQ(s.antecedent.size(), 2u);
  EXPECT_EQ(s.succedent.size(), 2u);
  EXPECT_EQ(parse_sequent("p; q => r, p", sig()), s);
  Sequent empty = parse_sequent("|-", sig());
  EXPECT_TRUE(empty.antecedent.empty() && empty.succedent.empty());
  EXPECT_EQ(print_sequent(parse_sequent("|- p | ~p", sig())), "|- p | ~p");
  EXPECT_EQ(print_sequent(parse_sequent("p |-", sig())), "p |-");
  EXPECT_THROW(parse_sequent("p, q", sig()), ParseError);
}

TEST(Parser, PrintingUsesMinimalParentheses) {
  EXPECT_EQ(print_formula(parse("(p & q) & r")), "p & q & r");
  EXPECT_EQ(print_formula(parse("p & (q & r)")), "p & (q & r)");
  EXPECT_EQ(print_formula(parse("(p -> q) -> r")), "(p -> q) -> r");
  EXPECT_EQ(print_formula(parse("p -> (q -> r)")), "p -> q -> r");
  EXPECT_EQ(print_formula(parse("~(x = y)")), "x != y");
  EXPECT_EQ(print_formula(parse("~F")), "T");
  EXPECT_EQ(print_formula(parse("(forall x. P(x)) & q")), "(forall x. P(x)) & q");
  EXPECT_EQ(print_formula(parse("Des (p | q)")), "Des (p | q)");
  EXPECT_EQ(print_formula(parse("~ ~ Both")), "~~Both");
}

TEST(Parser, RoundTripOnGeneratedFormulas) {
  Rng rng(7);
  PropGenOptions prop;
  prop.atoms = {"p", "q", "r"};
  prop.max_depth = 5;
  prop.extra = {Connective::Des, Connective::Both};
  FoGenOptions fo;
  fo.equality = true;
  fo.max_depth = 5;
  fo.unary_predicates = {"P", "Q"};
  fo.constants = {"c", "d"};
  for (int i = 0; i < 2000; ++i) {
    Formula a = i % 2 ? random_prop_formula(rng, prop) : random_fo_formula(rng, fo);
    std::string text = print_formula(a);
    EXPECT_EQ(parse(text), a) << text;
    EXPECT_EQ(print_formula(parse(text)), text);
  }
}

TEST(Parser, EnumerationCounts) {
  EXPECT_EQ(enumerate_prop_formulas({"p", "q"}, 0).size(), 3u);
  EXPECT_EQ(enumerate_prop_formulas({"p", "q"}, 1).size(), 33u);
  EXPECT_EQ(enumerate_prop_formulas({"p", "q"}, 2).size(), 3303u);
}

}  // namespace
}  // namespace bd4
