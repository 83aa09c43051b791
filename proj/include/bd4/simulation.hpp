// Simulating LP, K3 and classical logic (with implication and falsity)
// inside BD by adding premises that force atomic formulas into the
// smaller value sets.
//
// For each atomic subformula A of the problem:
//   LP adds ~((A | ~A) -> F), designated exactly when A is not n;
//   K3 adds (A & ~A) -> F, designated exactly when A is not b;
//   classical logic adds both.

#ifndef BD4_SIMULATION_HPP
#define BD4_SIMULATION_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bd4/semantics.hpp"
#include "bd4/syntax.hpp"

namespace bd4 {

enum class ExtensionMode { LP, K3, CL };

ValueSet mode_values(ExtensionMode m);
std::string_view mode_name(ExtensionMode m);  // "lp", "k3", "cl"
ExtensionMode parse_mode(std::string_view text);

Formula lp_generator(const Formula& a);
Formula k3_generator(const Formula& a);

// The extra premises for Gamma |- Delta, sorted.
FormulaSet translation_sets(std::span<const Formula> gamma, std::span<const Formula> delta,
                            ExtensionMode mode);

struct SimulationCheck {
  bool mode_holds = false;        // Gamma |= Delta over the mode's values
  bool translated_holds = false;  // translation, Gamma |= Delta over all four
  bool bd_holds = false;          // Gamma |= Delta over all four
  FormulaSet translation;
  // A valuation refuting whichever side fails, if one does.
  std::optional<Valuation> counterexample;

  bool agrees() const { return mode_holds == translated_holds; }
  bool inclusion() const { return !bd_holds || mode_holds; }
};

// Propositional input only.
SimulationCheck verify_simulation(std::span<const Formula> gamma, std::span<const Formula> delta,
                                  ExtensionMode mode);

}  // namespace bd4

#endif  // BD4_SIMULATION_HPP
