#include <gtest/gtest.h>

#include "bd4/parser.hpp"
#include "bd4/syntax.hpp"

namespace bd4 {
namespace {

Signature fo_sig() {
  return Signature::parse("pred P/1\npred Q/1\npred R/2\nconst c\nfunc f/1\nprop p\nprop q\n");
}

Formula fo(std::string_view text) { return parse_formula(text, fo_sig()); }

TEST(Syntax, FreeVariablesFollowBinding) {
  EXPECT_EQ(free_vars(fo("forall x. R(x, y)")), (VarSet{"y"}));
  EXPECT_TRUE(free_vars(fo("p")).empty());
  EXPECT_EQ(free_vars(fo("P(x) | exists x. Q(x)")), (VarSet{"x"}));
  EXPECT_EQ(free_vars(parse_term("f(f(z))", fo_sig())), (VarSet{"z"}));
}

TEST(Syntax, SubstitutionLeavesBoundOccurrences) {
  Formula a = fo("P(x) & forall x. Q(x)");
  EXPECT_EQ(substitute(a, "x", Term::function("c")), fo("P(c) & forall x. Q(x)"));
}

TEST(Syntax, SubstitutionRenamesToAvoidCapture) {
  Formula a = fo("forall y. R(x, y)");
  Formula result = substitute(a, "x", Term::variable("y"));
  EXPECT_EQ(result, fo("forall y1. R(y, y1)"));
  EXPECT_EQ(free_vars(result), (VarSet{"y"}));
}

TEST(Syntax, SubstitutionIntoTerms) {
  Term fx = Term::function("f", {Term::variable("x")});
  EXPECT_EQ(substitute(fo("P(x)"), "x", fx), fo("P(f(x))"));
}

TEST(Syntax, FreshNameSkipsUsedIndices) {
  EXPECT_EQ(fresh_variable("y", {"y", "y1", "y2"}), "y3");
  EXPECT_EQ(fresh_variable("x7", {}), "x1");
  // Renaming avoids variables free in the body as well as in the term.
  Formula a = fo("forall y. R(x, y) & P(y1)");
  EXPECT_EQ(substitute(a, "x", Term::variable("y")), fo("forall y2. R(y, y2) & P(y1)"));
}

TEST(Syntax, SubstitutionLemmaOnFreeVariables) {
  const char* cases[] = {"forall y. R(x, y)", "P(x) & exists x. P(x)", "exists z. R(x, z) -> P(x)",
                         "~forall y. exists x. R(x, y) | P(x)"};
  const Term terms[] = {Term::variable("y"), Term::function("f", {Term::variable("z")}),
                        Term::function("c")};
  for (const char* text : cases) {
    Formula a = fo(text);
    if (!occurs_free("x", a)) {
      EXPECT_EQ(substitute(a, "x", terms[0]), a);
      continue;
    }
    for (const Term& t : terms) {
      VarSet expected = free_vars(a);
      expected.erase("x");
      VarSet tv = free_vars(t);
      expected.insert(tv.begin(), tv.end());
      EXPECT_EQ(free_vars(substitute(a, "x", t)), expected) << text;
    }
  }
}

TEST(Syntax, AtomicSubformulas) {
  std::vector<Formula> g = {fo("~(p & q) -> p")};
  EXPECT_EQ(atomic_subformulas(g), make_set({fo("p"), fo("q")}));
  std::vector<Formula> h = {fo("forall x. P(x)")};
  EXPECT_EQ(atomic_subformulas(h), make_set({fo("P(x)")}));
  EXPECT_TRUE(atomic_subformulas(std::vector<Formula>{}).empty());
  std::vector<Formula> withf = {fo("p -> F")};
  EXPECT_EQ(atomic_subformulas(withf), make_set({fo("p"), Formula::falsity()}));
}

TEST(Syntax, SequentSidesAreSets) {
  Sequent a({fo("p"), fo("q"), fo("p")}, {fo("q")});
  Sequent b({fo("q"), fo("p")}, {fo("q"), fo("q")});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.antecedent.size(), 2u);
}

TEST(Syntax, DepthAndCount) {
  EXPECT_EQ(fo("p").depth(), 0);
  EXPECT_EQ(fo("~(p & q)").depth(), 2);
  EXPECT_EQ(fo("~(p & q)").connective_count(), 2);
  EXPECT_TRUE(fo("~P(c)").is_literal());
  EXPECT_FALSE(fo("~~p").is_literal());
  EXPECT_TRUE(fo("p & q").is_propositional());
  EXPECT_FALSE(fo("P(c)").is_propositional());
}

TEST(Syntax, SignatureFileAndConflicts) {
  Signature sig = Signature::parse("# symbols\nfunc g/2\npred S/3\nconst a\nprop r\nconn Des\n");
  EXPECT_EQ(sig.function_arity("g"), 2);
  EXPECT_EQ(sig.function_arity("a"), 0);
  EXPECT_EQ(sig.predicate_arity("S"), 3);
  EXPECT_EQ(sig.predicate_arity("r"), 0);
  EXPECT_TRUE(sig.enabled(Connective::Des));
  EXPECT_FALSE(sig.enabled(Connective::Norm));
  EXPECT_EQ(Signature::parse(sig.to_string()).to_string(), sig.to_string());
  EXPECT_THROW(Signature::parse("func g/2\npred g/1\n"), Error);
  EXPECT_THROW(Signature::parse("func g/2\nfunc g/1\n"), Error);
  EXPECT_THROW(Signature::parse("pred forall/1\n"), Error);
  EXPECT_THROW(Signature::parse("relation R/2\n"), Error);
  EXPECT_THROW(Signature::parse("func g\n"), Error);
}

TEST(Syntax, SignatureOfFormulas) {
  std::vector<Formula> fs = {fo("forall x. R(x, f(c)) & p")};
  Signature sig = Signature::of(fs);
  EXPECT_EQ(sig.predicate_arity("R"), 2);
  EXPECT_EQ(sig.function_arity("f"), 1);
  EXPECT_EQ(sig.function_arity("c"), 0);
  EXPECT_EQ(sig.predicate_arity("p"), 0);
  EXPECT_FALSE(sig.declares("x"));
}

TEST(Syntax, TotalOrderIsStrictAndConsistent) {
  std::vector<Formula> fs = {fo("p"), fo("q"), fo("~p"), fo("p & q"), fo("q & p"),
                             fo("P(c)"), fo("forall x. P(x)"), Formula::falsity()};
  for (const auto& a : fs)
    for (const auto& b : fs) {
      EXPECT_EQ(compare(a, b) == 0, a == b);
      EXPECT_EQ(compare(a, b), -compare(b, a));
    }
}

}  // namespace
}  // namespace bd4
