#include <gtest/gtest.h>

#include "bd4/generators.hpp"
#include "bd4/parser.hpp"
#include "bd4/proof_search.hpp"

namespace bd4 {
namespace {

using Status = SearchResult::Status;

Sequent seq(std::string_view text) {
  Signature sig;
  return parse_sequent_infer(text, sig);
}

SearchBudget with_packs(Packs packs) {
  SearchBudget b;
  b.packs = packs;
  return b;
}

TEST(ProofSearch, FindsCheckedProof) {
  SearchResult r = prove_prop(seq("p & q => q & p"));
  ASSERT_EQ(r.status, Status::Proof);
  EXPECT_TRUE(check_derivation(*r.proof));
  EXPECT_EQ(r.proof->target(), seq("p & q => q & p"));
  for (const auto& step : r.proof->steps) EXPECT_NE(step.rule, Rule::Cut);
}

TEST(ProofSearch, ExcludedMiddle) {
  SearchResult r = prove_prop(seq(" => p | ~p"));
  ASSERT_EQ(r.status, Status::Countermodel);
  EXPECT_EQ(r.countermodel->to_string(), "p=N");

  r = prove_prop(seq(" => p | ~p"), with_packs(Packs::lp()));
  ASSERT_EQ(r.status, Status::Proof);
  std::vector<Rule> rules;
  for (const auto& s : r.proof->steps) rules.push_back(s.rule);
  EXPECT_EQ(rules, (std::vector<Rule>{Rule::Id, Rule::NotR, Rule::OrR}));

  r = prove_prop(seq(" => p | ~p"), with_packs(Packs::k3()));
  EXPECT_EQ(r.status, Status::Countermodel);
}

TEST(ProofSearch, Explosion) {
  EXPECT_EQ(prove_prop(seq("p, ~p => q")).status, Status::Countermodel);
  EXPECT_EQ(prove_prop(seq("p, ~p => q"), with_packs(Packs::k3())).status, Status::Proof);
  EXPECT_EQ(prove_prop(seq("p, ~p => q"), with_packs(Packs::lp())).status, Status::Countermodel);
}

TEST(ProofSearch, Budget) {
  SearchBudget tiny;
  tiny.max_nodes = 2;
  SearchResult r = prove_prop(seq("(p | q) & (q | p) => (q | p) & (p | q)"), tiny);
  EXPECT_EQ(r.status, Status::Exhausted);
  EXPECT_TRUE(r.budget_exceeded);
  tiny.max_nodes = 0;
  EXPECT_THROW(prove_prop(seq("p => p"), tiny), Error);
}

TEST(ProofSearch, RejectsUnsupportedFormulas) {
  EXPECT_THROW(prove_prop(seq("Des p => p")), Error);
  EXPECT_THROW(prove_prop(seq("P(c) => P(c)")), Error);
  EXPECT_EQ(prove_prop(seq("Both => Both")).status, Status::Proof);
}

TEST(ProofSearch, Decide) {
  Decision d = decide_prop(seq("p & ~p => F"));
  EXPECT_FALSE(d.valid);
  EXPECT_EQ(d.witness->to_string(), "p=B");
  EXPECT_TRUE(decide_prop(seq(" => (p & (p -> F)) -> q")).valid);
  EXPECT_TRUE(decide_prop(seq("p => p")).valid);
}

TEST(ProofSearch, AgreesWithOracleOnSmallSequents) {
  auto formulas = enumerate_prop_formulas({"p", "q"}, 1);
  for (Packs packs : {Packs::base(), Packs::lp(), Packs::k3(), Packs::cl()}) {
    for (const auto& a : formulas) {
      for (const auto& b : formulas) {
        for (const Sequent& s : {Sequent({a}, {b}), Sequent({a, b}, {}), Sequent({}, {a, b})}) {
          SearchResult r = prove_prop(s, with_packs(packs));
          Decision d = decide_prop(s, packs.values());
          if (d.valid) {
            ASSERT_EQ(r.status, Status::Proof) << print_sequent(s, ", ", "=>");
            ASSERT_TRUE(check_derivation(*r.proof));
          } else {
            ASSERT_EQ(r.status, Status::Countermodel) << print_sequent(s, ", ", "=>");
            EXPECT_EQ(r.countermodel, d.witness);
          }
        }
      }
    }
  }
}

TEST(ProofSearch, PackMonotonicity) {
  Rng rng(7);
  PropGenOptions options;
  options.max_depth = 3;
  for (int i = 0; i < 300; ++i) {
    Sequent s({random_prop_formula(rng, options)}, {random_prop_formula(rng, options)});
    if (prove_prop(s).status != Status::Proof) continue;
    for (Packs packs : {Packs::lp(), Packs::k3(), Packs::cl(), Packs{.den = true}})
      EXPECT_EQ(prove_prop(s, with_packs(packs)).status, Status::Proof);
  }
}

}  // namespace
}  // namespace bd4
