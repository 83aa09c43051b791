#include "bd4/simulation.hpp"

namespace bd4 {

ValueSet mode_values(ExtensionMode m) {
  switch (m) {
    case ExtensionMode::LP:
      return kLpValues;
    case ExtensionMode::K3:
      return kK3Values;
    case ExtensionMode::CL:
      return kClassicalValues;
  }
  return kFourValues;
}

std::string_view mode_name(ExtensionMode m) {
  switch (m) {
    case ExtensionMode::LP:
      return "lp";
    case ExtensionMode::K3:
      return "k3";
    case ExtensionMode::CL:
      return "cl";
  }
  return "?";
}

ExtensionMode parse_mode(std::string_view text) {
  for (ExtensionMode m : {ExtensionMode::LP, ExtensionMode::K3, ExtensionMode::CL})
    if (text == mode_name(m)) return m;
  throw Error("unknown mode '" + std::string(text) + "' (expected lp, k3 or cl)");
}

Formula lp_generator(const Formula& a) {
  return Formula::neg(Formula::implies(Formula::disj(a, Formula::neg(a)), Formula::falsity()));
}

Formula k3_generator(const Formula& a) {
  return Formula::implies(Formula::conj(a, Formula::neg(a)), Formula::falsity());
}

FormulaSet translation_sets(std::span<const Formula> gamma, std::span<const Formula> delta,
                            ExtensionMode mode) {
  std::vector<Formula> all(gamma.begin(), gamma.end());
  all.insert(all.end(), delta.begin(), delta.end());
  std::vector<Formula> out;
  for (const auto& a : atomic_subformulas(all)) {
    if (mode != ExtensionMode::K3) out.push_back(lp_generator(a));
    if (mode != ExtensionMode::LP) out.push_back(k3_generator(a));
  }
  return make_set(std::move(out));
}

SimulationCheck verify_simulation(std::span<const Formula> gamma, std::span<const Formula> delta,
                                  ExtensionMode mode) {
  SimulationCheck c;
  c.translation = translation_sets(gamma, delta, mode);
  std::vector<Formula> extended(c.translation.begin(), c.translation.end());
  extended.insert(extended.end(), gamma.begin(), gamma.end());

  PropResult in_mode = consequence_prop(gamma, delta, mode_values(mode));
  PropResult translated = consequence_prop(extended, delta, kFourValues);
  PropResult bd = consequence_prop(gamma, delta, kFourValues);
  c.mode_holds = in_mode.holds;
  c.translated_holds = translated.holds;
  c.bd_holds = bd.holds;
  if (!in_mode.holds)
    c.counterexample = in_mode.witness;
  else if (!translated.holds)
    c.counterexample = translated.witness;
  return c;
}

}  // namespace bd4
