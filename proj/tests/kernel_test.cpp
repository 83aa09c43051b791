#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bd4/corpus.hpp"
#include "bd4/kernel.hpp"
#include "bd4/parser.hpp"
#include "bd4/semantics.hpp"

namespace bd4 {
namespace {

Formula fm(std::string_view text, Signature& sig) { return parse_formula_infer(text, sig); }

Sequent seq(std::string_view text) {
  Signature sig;
  return parse_sequent_infer(text, sig);
}

Step make_step(std::string_view sequent, Rule rule, std::vector<int> premises = {},
               std::optional<std::string> principal = std::nullopt) {
  Step s;
  Signature sig;
  s.conclusion = parse_sequent_infer(sequent, sig);
  s.rule = rule;
  s.premises = std::move(premises);
  if (principal) s.principal = fm(*principal, sig);
  return s;
}

Derivation and_commute() {
  Derivation d;
  d.steps.push_back(make_step("p, q => q", Rule::Id, {}, "q"));
  d.steps.push_back(make_step("p, q => p", Rule::Id, {}, "p"));
  d.steps.push_back(make_step("p, q => q & p", Rule::AndR, {0, 1}, "q & p"));
  d.steps.push_back(make_step("p & q => q & p", Rule::AndL, {2}, "p & q"));
  return d;
}

TEST(Kernel, RuleNames) {
  EXPECT_EQ(all_rules().size(), 32u);
  int base = 0;
  for (Rule r : all_rules()) {
    EXPECT_EQ(rule_from_name(rule_name(r)), r);
    base += is_base_rule(r);
  }
  EXPECT_EQ(base, kBaseRuleCount);
  EXPECT_FALSE(rule_from_name("Weaken"));
}

TEST(Kernel, PacksParse) {
  EXPECT_EQ(Packs::parse("base"), Packs::base());
  EXPECT_EQ(Packs::parse("cl"), Packs::cl());
  EXPECT_EQ(Packs::parse("notL+den"), (Packs{true, false, true}));
  EXPECT_EQ(Packs::parse("lp, k3"), Packs::cl());
  EXPECT_THROW(Packs::parse("modal"), Error);
  EXPECT_EQ(Packs::lp().values(), kLpValues);
  EXPECT_EQ(Packs::k3().values(), kK3Values);
  EXPECT_FALSE(Packs{.den = true}.allows(Rule::EqRefl));
  EXPECT_TRUE(Packs::base().allows(Rule::EqRefl));
  EXPECT_FALSE(Packs::base().allows(Rule::NotL));
}

TEST(Kernel, IdRequiresLiteral) {
  EXPECT_TRUE(check_step(make_step("p => p", Rule::Id, {}, "p"), 0, {}, {}));
  EXPECT_TRUE(check_step(make_step("~p, q => ~p, r", Rule::Id, {}, "~p"), 0, {}, {}));
  auto r = check_step(make_step("p & q => p & q", Rule::Id, {}, "p & q"), 0, {}, {});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.code, Violation::LiteralRestriction);
  r = check_step(make_step("p => q", Rule::Id, {}, "p"), 0, {}, {});
  EXPECT_EQ(r.code, Violation::ConclusionMismatch);
}

TEST(Kernel, ThreeStepProof) {
  Derivation d = and_commute();
  EXPECT_TRUE(check_derivation(d));
  EXPECT_TRUE(d.is_proof());
  EXPECT_EQ(d.target(), seq("p & q => q & p"));

  std::swap(d.steps[2], d.steps[3]);
  auto r = check_derivation(d);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.code, Violation::ForwardReference);
  EXPECT_EQ(r.step, 2);
}

TEST(Kernel, SetsIgnoreOrderAndDuplicates) {
  Derivation d = and_commute();
  d.steps[0].conclusion = seq("q, p, q => q");
  EXPECT_TRUE(check_derivation(d));
}

TEST(Kernel, ContractionIsImplicit) {
  // The principal formula may already occur in the premise context.
  Derivation d;
  d.steps.push_back(make_step("p & q, p, q => p", Rule::Id, {}, "p"));
  d.steps.push_back(make_step("p & q => p", Rule::AndL, {0}, "p & q"));
  EXPECT_TRUE(check_derivation(d));
}

TEST(Kernel, Eigenvariable) {
  Signature sig;
  Step id = make_step("P(y) => P(y)", Rule::Id, {}, "P(y)");
  Step all = make_step("P(y) => forall x. P(x)", Rule::ForallR, {0}, "forall x. P(x)");
  all.y = "y";
  Derivation d;
  d.steps = {id, all};
  auto r = check_derivation(d);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.code, Violation::Eigenvariable);

  all.y.reset();
  d.steps[1] = all;
  EXPECT_EQ(check_derivation(d).code, Violation::MissingInstantiation);
}

TEST(Kernel, NegatedImplicationLeft) {
  Derivation d;
  d.steps.push_back(make_step("p, ~q => p", Rule::Id, {}, "p"));
  d.steps.push_back(make_step("~(p -> q) => p", Rule::NotImpL, {0}, "~(p -> q)"));
  EXPECT_TRUE(check_derivation(d));
}

TEST(Kernel, NotFalsityRight) {
  Derivation d;
  d.steps.push_back(make_step(" => ~F", Rule::NotFalsityR));
  EXPECT_TRUE(check_derivation(d));
  EXPECT_TRUE(derives({}, std::vector<Formula>{Formula::truth()}, d));
}

TEST(Kernel, EqualityReflexivity) {
  Derivation d;
  Step id = make_step("a = a, P(a) => P(a)", Rule::Id, {}, "P(a)");
  Step refl = make_step("P(a) => P(a)", Rule::EqRefl, {0});
  refl.t = Term::variable("a");
  d.steps = {id, refl};
  EXPECT_TRUE(check_derivation(d));
  auto r = check_derivation(d, Packs{.den = true});
  ASSERT_FALSE(r);
  EXPECT_EQ(r.code, Violation::PackDisabled);
}

TEST(Kernel, HypothesesMustBeDeclared) {
  Derivation d;
  d.steps.push_back(make_step("p => q", Rule::Hypothesis));
  EXPECT_EQ(check_derivation(d).code, Violation::NotAHypothesis);
  d.hypotheses.push_back(seq("p => q"));
  EXPECT_TRUE(check_derivation(d));
  EXPECT_FALSE(d.is_proof());
  EXPECT_FALSE(derives(std::vector<Formula>{}, std::vector<Formula>{}, d));
}

TEST(Kernel, Derives) {
  Derivation d = and_commute();
  Signature sig;
  std::vector<Formula> gamma = {fm("p & q", sig), fm("r", sig)};
  std::vector<Formula> delta = {fm("q & p", sig)};
  EXPECT_TRUE(derives(gamma, delta, d));
  std::vector<Formula> small = {fm("r", sig)};
  auto r = derives_check(small, delta, d);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.code, Violation::SubsetViolation);
}

TEST(Kernel, EqualityAxioms) {
  Signature empty;
  auto axioms = equality_axioms(empty);
  ASSERT_EQ(axioms.size(), 1u);
  EXPECT_EQ(print_formula(axioms[0]), "forall x. x = x");

  Signature sig = Signature::parse("const c\nfunc f/1\npred P/2\nprop p\n");
  std::set<std::string> printed;
  for (const auto& a : equality_axioms(sig)) printed.insert(print_formula(a));
  EXPECT_EQ(printed, (std::set<std::string>{
                         "forall x. x = x",
                         "c = c",
                         "forall x1. forall y1. x1 = y1 -> f(x1) = f(y1)",
                         "forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & P(x1, x2) -> P(y1, y2)",
                         "p -> p",
                     }));
  EXPECT_EQ(equality_axioms(sig, {.equality_congruence = true}).size(), 6u);
}

TEST(Kernel, FileRoundTrip) {
  for (const auto& entry : proof_corpus()) {
    Derivation d = parse_derivation(entry.text);
    Derivation again = parse_derivation(print_derivation(d));
    ASSERT_EQ(again.steps.size(), d.steps.size()) << entry.name;
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
      EXPECT_EQ(again.steps[i].conclusion, d.steps[i].conclusion) << entry.name;
      EXPECT_EQ(again.steps[i].rule, d.steps[i].rule) << entry.name;
      EXPECT_EQ(again.steps[i].premises, d.steps[i].premises) << entry.name;
    }
    EXPECT_EQ(again.packs, d.packs);
    EXPECT_TRUE(check_derivation(again)) << entry.name;
  }
}

TEST(Kernel, FileErrors) {
  EXPECT_THROW(parse_derivation("1: Id principal=\"p\" p => p\n"), DerivationFormatError);
  EXPECT_THROW(parse_derivation("2: Id principal=\"p\" |- p => p\n"), DerivationFormatError);
  EXPECT_THROW(parse_derivation("1: Id colour=\"red\" |- p => p\n"), DerivationFormatError);
  try {
    parse_derivation("packs: base\n1: Weaken |- p => p\n");
    FAIL();
  } catch (const DerivationFormatError& e) {
    EXPECT_EQ(e.code(), Violation::UnknownRule);
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Corpus, EveryEntryChecks) {
  for (const auto& entry : proof_corpus()) {
    auto r = check_text(entry.text);
    EXPECT_TRUE(r) << entry.name << ": " << r.message;
  }
}

TEST(Corpus, CoversEveryRule) {
  std::set<Rule> used;
  for (const auto& entry : proof_corpus())
    for (const auto& s : parse_derivation(entry.text).steps) used.insert(s.rule);
  for (Rule r : all_rules()) EXPECT_TRUE(used.count(r)) << rule_name(r);
  EXPECT_GE(proof_corpus().size(), 12u);
}

TEST(Corpus, TargetsAreValid) {
  for (const auto& entry : proof_corpus()) {
    Derivation d = parse_derivation(entry.text);
    if (!d.is_proof()) continue;
    const Sequent& s = d.target();
    bool propositional = std::all_of(s.antecedent.begin(), s.antecedent.end(),
                                     [](const Formula& a) { return a.is_propositional(); }) &&
                         std::all_of(s.succedent.begin(), s.succedent.end(),
                                     [](const Formula& a) { return a.is_propositional(); });
    if (propositional) {
      EXPECT_TRUE(consequence_prop(s, d.packs.values()).holds) << entry.name;
    } else {
      FoOptions options;
      options.max_domain = 2;
      options.allowed = d.packs.values();
      if (d.packs.den) options.mode = StructureMode::Partial;
      EXPECT_EQ(consequence_fo(s, options).status, FoResult::Status::NoCountermodel) << entry.name;
    }
  }
}

TEST(Corpus, EqualityFreeCompanions) {
  int companions = 0;
  for (const auto& entry : proof_corpus()) {
    if (entry.equality_free_companion.empty()) continue;
    ++companions;
    Derivation d = parse_derivation(entry.text);
    Derivation c = parse_derivation(corpus_entry(entry.equality_free_companion).text);
    for (const auto& s : c.steps) {
      EXPECT_NE(s.rule, Rule::EqRefl) << c.steps.size();
      EXPECT_NE(s.rule, Rule::EqRepl);
    }
    Signature sig = d.signature;
    sig.merge(Signature::of(d.target().antecedent));
    sig.merge(Signature::of(d.target().succedent));
    std::vector<Formula> gamma = equality_axioms(sig, {.equality_congruence = true});
    gamma.insert(gamma.end(), d.target().antecedent.begin(), d.target().antecedent.end());
    std::vector<Formula> delta(d.target().succedent.begin(), d.target().succedent.end());
    EXPECT_TRUE(derives(gamma, delta, c)) << entry.name;
  }
  EXPECT_GE(companions, 2);
}

TEST(Corpus, MutationsAreRejectedWithTheirCode) {
  EXPECT_GE(mutation_suite().size(), 30u);
  std::set<Violation> codes;
  for (const auto& m : mutation_suite()) {
    auto r = check_text(mutated_text(m));
    EXPECT_FALSE(r) << m.name;
    EXPECT_EQ(violation_name(r.code), violation_name(m.expected)) << m.name << ": " << r.message;
    codes.insert(m.expected);
  }
  EXPECT_GE(codes.size(), 10u);
}

}  // namespace
}  // namespace bd4
