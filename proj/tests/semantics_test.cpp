#include <gtest/gtest.h>

#include "bd4/generators.hpp"
#include "bd4/parser.hpp"
#include "bd4/reference_tables.hpp"
#include "bd4/semantics.hpp"

namespace bd4 {
namespace {

using enum TruthValue;

Formula prop(std::string_view text) {
  Signature s;
  return parse_formula_infer(text, s);
}

std::vector<Formula> props(std::string_view text) {
  Signature s;
  return parse_formula_list_infer(text, s);
}

TEST(TruthValues, OperationsMatchReferenceTables) {
  for (TruthValue a : kAllValues) {
    EXPECT_EQ(negate(a), reference::kNegation[index_of(a)]);
    for (TruthValue b : kAllValues) {
      EXPECT_EQ(meet(a, b), reference::kConjunction[index_of(a)][index_of(b)]);
      EXPECT_EQ(join(a, b), reference::kDisjunction[index_of(a)][index_of(b)]);
      EXPECT_EQ(implies(a, b), reference::kImplication[index_of(a)][index_of(b)]);
    }
  }
  for (unsigned mask = 1; mask < 16; ++mask) {
    EXPECT_EQ(ValueSet(mask).inf(), reference::infimum(mask));
    EXPECT_EQ(ValueSet(mask).sup(), reference::supremum(mask));
  }
  EXPECT_EQ((ValueSet{b, n}).inf(), f);
  EXPECT_EQ((ValueSet{b, n}).sup(), t);
}

TEST(TruthValues, ClosedSetsAreExactlyTheFourSubmatrices) {
  std::vector<ValueSet> closed;
  for (unsigned mask = 1; mask < 16; ++mask)
    if (closed_under_operations(ValueSet(mask))) closed.push_back(ValueSet(mask));
  ASSERT_EQ(closed.size(), 4u);
  for (ValueSet s : {kFourValues, kLpValues, kK3Values, kClassicalValues})
    EXPECT_NE(std::find(closed.begin(), closed.end(), s), closed.end());
}

TEST(TruthValues, ParseAndPrint) {
  for (TruthValue v : kAllValues) {
    EXPECT_EQ(parse_truth_value(std::string(1, to_char(v))), v);
    EXPECT_EQ(parse_truth_value(std::string(1, to_upper_char(v))), v);
  }
  EXPECT_FALSE(parse_truth_value("x").has_value());
  EXPECT_EQ((ValueSet{t, b}).to_string(), "{t,b}");
}

TEST(Evaluate, PropositionalExamples) {
  EXPECT_EQ(evaluate(prop("~p"), Valuation{{"p", b}}), b);
  EXPECT_EQ(evaluate(prop("p & q"), Valuation{{"p", b}, {"q", n}}), f);
  EXPECT_EQ(evaluate(prop("p -> q"), Valuation{{"p", n}, {"q", f}}), t);
  EXPECT_EQ(evaluate(prop("p -> q"), Valuation{{"p", b}, {"q", n}}), n);
  EXPECT_EQ(evaluate(prop("F"), Valuation{}), f);
  EXPECT_EQ(evaluate(prop("T"), Valuation{}), t);
  EXPECT_THROW(evaluate(prop("p"), Valuation{}), Error);
}

TEST(Evaluate, ExtraConnectives) {
  EXPECT_EQ(apply_connective(Connective::Des, b), t);
  EXPECT_EQ(apply_connective(Connective::Des, n), f);
  EXPECT_EQ(apply_connective(Connective::Norm, f), t);
  EXPECT_EQ(apply_connective(Connective::Norm, b), f);
  EXPECT_EQ(apply_connective(Connective::Cons, n), t);
  EXPECT_EQ(apply_connective(Connective::Cons, b), f);
  EXPECT_EQ(apply_connective(Connective::Det, b), t);
  EXPECT_EQ(apply_connective(Connective::Det, n), f);
  EXPECT_EQ(apply_connective(Connective::Confl, b), n);
  EXPECT_EQ(apply_connective(Connective::Confl, t), t);
  EXPECT_EQ(apply_connective(Connective::Both), b);
  EXPECT_EQ(apply_connective(Connective::Neither), n);
}

TEST(Evaluate, CompiledAgreesWithTreeEvaluation) {
  Rng rng(11);
  PropGenOptions gen;
  gen.atoms = {"p", "q", "r"};
  gen.max_depth = 4;
  gen.extra = {Connective::Des, Connective::Confl, Connective::Both};
  std::vector<std::string> atoms = gen.atoms;
  for (int i = 0; i < 300; ++i) {
    Formula a = random_prop_formula(rng, gen);
    CompiledFormula c(a, atoms);
    for_each_valuation(3, kFourValues, [&](std::span<const TruthValue> v) {
      Valuation val{{"p", v[0]}, {"q", v[1]}, {"r", v[2]}};
      EXPECT_EQ(c.evaluate(v), evaluate(a, val));
      return true;
    });
  }
}

TEST(Consequence, ParaconsistencyAndParacompleteness) {
  auto r = consequence_prop(props("p, ~p"), props("q"));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness->to_string(), "p=B q=F");
  EXPECT_TRUE(consequence_prop(props("p, ~p"), props("q"), kK3Values).holds);
  auto lem = consequence_prop({}, props("p | ~p"));
  EXPECT_FALSE(lem.holds);
  EXPECT_EQ(lem.witness->to_string(), "p=N");
  EXPECT_TRUE(consequence_prop(props("p"), props("p | q")).holds);
  EXPECT_TRUE(consequence_prop(props("p"), props("p | ~p")).holds);
  EXPECT_TRUE(consequence_prop(props("~p"), props("p | ~p")).holds);
  EXPECT_TRUE(consequence_prop({}, props("p | ~p"), kLpValues).holds);
  EXPECT_THROW(consequence_prop(props("p"), props("q"), ValueSet{t, b}), Error);
  Signature s = Signature::parse("pred P/1\n");
  EXPECT_THROW(consequence_prop(std::vector{parse_formula("P(x)", s)}, {}), Error);
}

TEST(Consequence, EquivalenceAndSynonymity) {
  EXPECT_TRUE(equivalent_prop(prop("~~p"), prop("p")).holds);
  auto r = equivalent_prop(prop("~p"), prop("p -> F"));
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.witness->to_string(), "p=B");
  EXPECT_TRUE(equivalent_prop(prop("p"), prop("p")).holds);
  EXPECT_TRUE(synonymous_prop(prop("Des p"), prop("~(p -> F)")).holds);
  EXPECT_TRUE(synonymous_prop(prop("p"), prop("p | p")).holds);
  EXPECT_FALSE(synonymous_prop(prop("p"), prop("p | ~p")).holds);
}

TEST(Consequence, SynonymityEqualsEquivalence) {
  Rng rng(3);
  PropGenOptions gen;
  gen.max_depth = 3;
  for (int i = 0; i < 500; ++i) {
    Formula a = random_prop_formula(rng, gen), c = random_prop_formula(rng, gen);
    EXPECT_EQ(synonymous_prop(a, c).holds, equivalent_prop(a, c).holds)
        << print_formula(a) << " vs " << print_formula(c);
  }
}

TEST(Consequence, RestrictedValuationsStayInTheirSet) {
  Rng rng(5);
  PropGenOptions gen;
  gen.max_depth = 4;
  for (ValueSet s : {kLpValues, kK3Values, kClassicalValues})
    for (int i = 0; i < 200; ++i) {
      Formula a = random_prop_formula(rng, gen);
      CompiledFormula c(a, {"p", "q"});
      for_each_valuation(2, s, [&](std::span<const TruthValue> v) {
        EXPECT_TRUE(s.contains(c.evaluate(v)));
        return true;
      });
    }
}

TEST(Consequence, ReplacingBySynonymPreservesConsequence) {
  Rng rng(9);
  PropGenOptions gen;
  gen.max_depth = 2;
  // Pairs known to be synonymous.
  std::vector<std::pair<Formula, Formula>> syn = {
      {prop("~~p"), prop("p")}, {prop("p & q"), prop("q & p")},
      {prop("~(p | q)"), prop("~p & ~q")}, {prop("p | F"), prop("p")}};
  for (const auto& [a, c] : syn) {
    ASSERT_TRUE(synonymous_prop(a, c).holds);
    for (int i = 0; i < 50; ++i) {
      Formula ctx = random_prop_formula(rng, gen);
      std::vector<Formula> g1 = {Formula::conj(a, ctx)}, g2 = {Formula::conj(c, ctx)};
      std::vector<Formula> d = {random_prop_formula(rng, gen)};
      EXPECT_EQ(consequence_prop(g1, d).holds, consequence_prop(g2, d).holds);
      EXPECT_EQ(consequence_prop(d, g1).holds, consequence_prop(d, g2).holds);
    }
  }
}

Structure two_element() {
  return parse_structure(
      "domain d1 d2\nconst c = d1\nfunc f d1 -> d2\nfunc f d2 -> d1\npred P d1 = T\n"
      "pred P d2 = B\nprop p = N\n");
}

TEST(Structures, EvaluateFirstOrder) {
  Structure m = two_element();
  Signature sig = Signature::parse("pred P/1\nconst c\nfunc f/1\nprop p\n");
  EXPECT_EQ(evaluate(parse_formula("forall x. P(x)", sig), m), b);
  EXPECT_EQ(evaluate(parse_formula("exists x. P(x)", sig), m), t);
  EXPECT_EQ(evaluate(parse_formula("P(f(c))", sig), m), b);
  EXPECT_EQ(evaluate(parse_formula("p | P(c)", sig), m), t);
  EXPECT_EQ(evaluate(parse_formula("c = c", sig), m), t);
  EXPECT_EQ(evaluate(parse_formula("c = f(c)", sig), m), f);
  EXPECT_EQ(evaluate(parse_formula("P(x)", sig), m, {{"x", 1}}), b);
  EXPECT_THROW(evaluate(parse_formula("P(x)", sig), m), Error);
  Signature other = Signature::parse("pred S/1\n");
  EXPECT_THROW(evaluate(parse_formula("S(x)", other), m, {{"x", 0}}), Error);
}

TEST(Structures, QuantifiersAgreeWithFiniteConjunction) {
  Structure m = two_element();
  Signature sig = Signature::parse("pred P/1\nconst c\nfunc f/1\n");
  // Over {d1, d2}, c and f(c) name both elements.
  EXPECT_EQ(evaluate(parse_formula("forall x. P(x)", sig), m),
            evaluate(parse_formula("P(c) & P(f(c))", sig), m));
  EXPECT_EQ(evaluate(parse_formula("exists x. ~P(x)", sig), m),
            evaluate(parse_formula("~P(c) | ~P(f(c))", sig), m));
}

TEST(Structures, PartialEqualityOnUndefined) {
  Structure m = parse_structure("domain u d1\nbottom u\nconst c = u\nconst e = d1\n");
  Signature sig = Signature::parse("const c\nconst e\n");
  EXPECT_EQ(evaluate(parse_formula("c = c", sig), m), n);
  EXPECT_EQ(evaluate(parse_formula("e = e", sig), m), t);
  EXPECT_EQ(evaluate(parse_formula("c = e", sig), m), n);
  EXPECT_EQ(evaluate(parse_formula("e = c | e != c", sig), m), n);
}

TEST(Structures, FileRoundTripAndErrors) {
  Structure m = two_element();
  Structure again = parse_structure(print_structure(m));
  EXPECT_EQ(print_structure(again), print_structure(m));
  EXPECT_THROW(parse_structure("domain d1 d2\nfunc f d1 -> d2\n"), Error);  // incomplete
  EXPECT_THROW(parse_structure("domain d1\npred P d2 = T\n"), Error);
  EXPECT_THROW(parse_structure("domain d1\neq d1 d1 = F\n"), Error);
  EXPECT_THROW(parse_structure("domain d1\npred P d1 = X\n"), Error);
  EXPECT_THROW(parse_structure("pred P d1 = T\n"), Error);
  Structure eq = parse_structure("domain d1 d2\neq d1 d2 = B\n");
  EXPECT_THROW(eq.validate(EqualityMode::Strict), Error);
  EXPECT_NO_THROW(eq.validate(EqualityMode::Loose));
}

Signature fo_sig() { return Signature::parse("pred P/1\nconst c\n"); }

TEST(FirstOrder, BoundedConsequenceExamples) {
  Signature sig = fo_sig();
  std::vector<Formula> all = {parse_formula("forall x. P(x)", sig)};
  std::vector<Formula> inst = {parse_formula("P(c)", sig)};
  FoOptions two;
  two.max_domain = 2;
  EXPECT_EQ(consequence_fo(all, inst, two).status, FoResult::Status::NoCountermodel);

  std::vector<Formula> ex = {parse_formula("exists x. P(x)", sig)};
  auto r = consequence_fo(ex, all);
  ASSERT_EQ(r.status, FoResult::Status::Countermodel);
  EXPECT_EQ(r.structure->size(), 2);

  std::vector<Formula> refl = {parse_formula("c = c", sig)};
  EXPECT_EQ(consequence_fo({}, refl).status, FoResult::Status::NoCountermodel);
  FoOptions partial;
  partial.mode = StructureMode::Partial;
  auto pr = consequence_fo({}, refl, partial);
  ASSERT_EQ(pr.status, FoResult::Status::Countermodel);
  EXPECT_EQ(pr.structure->functions.at("c").values[0], 0);
  EXPECT_TRUE(pr.structure->is_bottom(0));
}

TEST(FirstOrder, CountermodelsAreGenuine) {
  Rng rng(21);
  FoGenOptions gen;
  gen.equality = true;
  for (int i = 0; i < 60; ++i) {
    std::vector<Formula> g = {random_fo_formula(rng, gen)}, d = {random_fo_formula(rng, gen)};
    FoOptions options;
    options.max_domain = 2;
    auto r = consequence_fo(g, d, options);
    if (r.status != FoResult::Status::Countermodel) continue;
    EXPECT_NO_THROW(r.structure->validate(EqualityMode::Strict));
    EXPECT_TRUE(designated(evaluate(g[0], *r.structure, r.assignment)));
    EXPECT_FALSE(designated(evaluate(d[0], *r.structure, r.assignment)));
  }
}

TEST(FirstOrder, PropositionalPathsAgree) {
  Rng rng(17);
  PropGenOptions gen;
  gen.max_depth = 3;
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> g = {random_prop_formula(rng, gen)}, d = {random_prop_formula(rng, gen)};
    FoOptions options;
    options.max_domain = 1;
    bool fo = consequence_fo(g, d, options).status == FoResult::Status::NoCountermodel;
    EXPECT_EQ(fo, consequence_prop(g, d).holds);
  }
}

TEST(FirstOrder, CapIsReported) {
  Signature sig = Signature::parse("pred R/2\nfunc f/2\n");
  std::vector<Formula> g = {parse_formula("forall x. forall y. R(x, f(x, y))", sig)};
  FoOptions options;
  options.max_domain = 3;
  options.cap = 1000;
  auto r = consequence_fo(g, g, options);
  EXPECT_EQ(r.status, FoResult::Status::BoundExceeded);
  EXPECT_EQ(r.searched_up_to, 1);
}

TEST(FirstOrder, NormalityConditionNeedsSuccedentFreshness) {
  // x free in the succedent side formula breaks the universal condition.
  Signature sig = fo_sig();
  std::vector<Formula> lhs = {parse_formula("P(x) -> F", sig), parse_formula("forall x. P(x)", sig)};
  std::vector<Formula> rhs = {parse_formula("P(x) -> F", sig), parse_formula("P(x)", sig)};
  FoOptions options;
  options.max_domain = 2;
  EXPECT_EQ(consequence_fo({}, lhs, options).status, FoResult::Status::Countermodel);
  EXPECT_EQ(consequence_fo({}, rhs, options).status, FoResult::Status::NoCountermodel);
}

TEST(Normality, ProbeFindsNoFailures) {
  NormalityReport report = normality_probe(0, 300);
  for (const auto& p : report.properties) {
    EXPECT_GT(p.instances, 0) << p.name;
    EXPECT_EQ(p.failures, 0) << p.name << ": " << p.first_failure;
  }
  EXPECT_TRUE(report.all_hold());
}

TEST(Normality, DeductionExample) {
  EXPECT_FALSE(consequence_prop(props("p"), props("p -> q")).holds);
  EXPECT_FALSE(consequence_prop(props("p, p"), props("q")).holds);
  EXPECT_FALSE(consequence_prop(props("p"), props("~p")).holds);
  EXPECT_FALSE(consequence_prop(props("~p"), props("p")).holds);
}

}  // namespace
}  // namespace bd4
