#include <gtest/gtest.h>

#include "bd4/generators.hpp"
#include "bd4/parser.hpp"
#include "bd4/simulation.hpp"

namespace bd4 {
namespace {

std::vector<Formula> list(std::string_view text) {
  Signature sig;
  Sequent s = parse_sequent_infer(std::string(text) + " =>", sig);
  return {s.antecedent.begin(), s.antecedent.end()};
}

std::vector<std::string> printed(const FormulaSet& set) {
  std::vector<std::string> out;
  for (const auto& a : set) out.push_back(print_formula(a));
  return out;
}

TEST(Simulation, TranslationSets) {
  EXPECT_EQ(printed(translation_sets(list("p"), list("q"), ExtensionMode::LP)),
            (std::vector<std::string>{"~(p | ~p -> F)", "~(q | ~q -> F)"}));
  EXPECT_EQ(printed(translation_sets({}, list("p | ~p"), ExtensionMode::K3)),
            (std::vector<std::string>{"p & ~p -> F"}));
  EXPECT_TRUE(translation_sets({}, {}, ExtensionMode::CL).empty());
  EXPECT_EQ(translation_sets(list("p -> F"), {}, ExtensionMode::CL).size(), 4u);
}

TEST(Simulation, GeneratorsPinValues) {
  Formula p = Formula::prop("p");
  for (TruthValue v : kAllValues) {
    Valuation val{{"p", v}};
    EXPECT_EQ(designated(evaluate(lp_generator(p), val)), v != TruthValue::n);
    EXPECT_EQ(designated(evaluate(k3_generator(p), val)), v != TruthValue::b);
  }
}

TEST(Simulation, Examples) {
  SimulationCheck c = verify_simulation({}, list("p | ~p"), ExtensionMode::LP);
  EXPECT_TRUE(c.mode_holds);
  EXPECT_TRUE(c.translated_holds);
  EXPECT_FALSE(c.bd_holds);

  c = verify_simulation(list("p, ~p"), list("q"), ExtensionMode::K3);
  EXPECT_TRUE(c.mode_holds);
  EXPECT_TRUE(c.translated_holds);

  c = verify_simulation(list("p, ~p"), list("q"), ExtensionMode::LP);
  EXPECT_FALSE(c.mode_holds);
  EXPECT_FALSE(c.translated_holds);
  ASSERT_TRUE(c.counterexample);
  EXPECT_EQ(c.counterexample->at("p"), TruthValue::b);
}

TEST(Simulation, AgreesOnRandomInstances) {
  Rng rng(11);
  PropGenOptions options;
  options.atoms = {"p", "q", "r"};
  options.max_depth = 3;
  for (int i = 0; i < 500; ++i) {
    std::vector<Formula> gamma = {random_prop_formula(rng, options)};
    std::vector<Formula> delta = {random_prop_formula(rng, options)};
    for (ExtensionMode m : {ExtensionMode::LP, ExtensionMode::K3, ExtensionMode::CL}) {
      SimulationCheck c = verify_simulation(gamma, delta, m);
      EXPECT_TRUE(c.agrees());
      EXPECT_TRUE(c.inclusion());
    }
  }
}

TEST(Simulation, Modes) {
  EXPECT_EQ(parse_mode("k3"), ExtensionMode::K3);
  EXPECT_THROW(parse_mode("s5"), Error);
  EXPECT_EQ(mode_values(ExtensionMode::CL), kClassicalValues);
}

}  // namespace
}  // namespace bd4
