// Checking derivations in the sequent calculus for BD with implication and
// falsity, with two optional rule packs: the negation rules ~-L / ~-R
// (giving K3, LP or classical logic) and the denotation rules Den-L / Den-R
// for partial structures.
//
// Steps carry an explicit instantiation record (principal formula, terms,
// variables), so checking never has to guess how a rule was applied.

#ifndef BD4_KERNEL_HPP
#define BD4_KERNEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bd4/syntax.hpp"
#include "bd4/truth_value.hpp"

namespace bd4 {

enum class Rule : std::uint8_t {
  Id, Cut, FalsityL, AndL, AndR, OrL, OrR, ImpL, ImpR,
  ForallL, ForallR, ExistsL, ExistsR,
  NotFalsityR, NotNotL, NotNotR, NotAndL, NotAndR, NotOrL, NotOrR, NotImpL, NotImpR,
  NotForallL, NotForallR, NotExistsL, NotExistsR,
  EqRefl, EqRepl,
  NotL, NotR,
  DenL, DenR,
  Hypothesis,
};

inline constexpr int kBaseRuleCount = 28;

// ASCII names as used in derivation files: "Id", "&-L", "~->-R", "=-Repl",
// "Den-L", "hyp", ...
std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
// Every rule except Hypothesis, in declaration order.
const std::vector<Rule>& all_rules();
bool is_base_rule(Rule r);

struct Packs {
  bool not_left = false;
  bool not_right = false;
  bool den = false;

  static Packs base() { return {}; }
  static Packs lp() { return {false, true, false}; }
  static Packs k3() { return {true, false, false}; }
  static Packs cl() { return {true, true, false}; }
  // Tokens joined by '+', ',' or spaces: base, lp, k3, cl, notL, notR,
  // notLR, den.
  static Packs parse(std::string_view text);
  std::string to_string() const;

  bool allows(Rule r) const;
  // Values over which the negation packs are sound: all four, LP, K3 or
  // the classical pair.
  ValueSet values() const;

  friend bool operator==(const Packs&, const Packs&) = default;
};

struct Step {
  Sequent conclusion;
  Rule rule = Rule::Hypothesis;
  std::vector<int> premises;  // indices of earlier steps, 0-based
  std::optional<Formula> principal;
  std::optional<Formula> side;   // the literal A of =-Repl
  std::optional<Term> t;         // instance term; t1 for =-Repl
  std::optional<Term> t2;        // =-Repl only
  std::optional<std::string> x;  // the variable replaced in =-Repl
  std::optional<std::string> y;  // eigenvariable
};

struct Derivation {
  std::vector<Step> steps;
  std::vector<Sequent> hypotheses;
  Packs packs;
  Signature signature;

  const Sequent& target() const;
  bool is_proof() const { return hypotheses.empty(); }
};

enum class Violation : std::uint8_t {
  UnknownRule,
  PackDisabled,
  PremiseCount,
  ForwardReference,
  PremiseMismatch,
  ConclusionMismatch,
  MissingInstantiation,
  PrincipalShape,
  LiteralRestriction,
  Eigenvariable,
  NotAHypothesis,
  TargetMismatch,
  EmptyDerivation,
  SubsetViolation,
  Malformed,
};

std::string_view violation_name(Violation v);  // "literal-restriction", ...

struct CheckResult {
  bool ok = true;
  int step = -1;  // 0-based index of the offending step
  Violation code = Violation::UnknownRule;
  std::string message;

  explicit operator bool() const { return ok; }
  static CheckResult success() { return {}; }
};

// Checks one step against the steps before it.
CheckResult check_step(const Step& step, int index, std::span<const Step> earlier,
                       const Packs& packs, std::span<const Sequent> hypotheses = {});

// Checks every step with the derivation's own packs; the first violation
// wins.
CheckResult check_derivation(const Derivation& d);
CheckResult check_derivation(const Derivation& d, const Packs& packs);

// A proof of some Gamma' |- Delta' with Gamma' a subset of gamma and Delta'
// a subset of delta.
CheckResult derives_check(std::span<const Formula> gamma, std::span<const Formula> delta,
                          const Derivation& proof);
bool derives(std::span<const Formula> gamma, std::span<const Formula> delta,
             const Derivation& proof);

struct EqualityAxiomOptions {
  // Also add the congruence axiom for = itself.
  bool equality_congruence = false;
};

// forall x. x = x, c = c for constants, congruence for functions, p -> p for
// propositions and congruence for predicates.
std::vector<Formula> equality_axioms(const Signature& sig, const EqualityAxiomOptions& options = {});

// Derivation files.
//
//   packs: base
//   sig: pred P/1
//   hypothesis: p => q
//   1: Id principal="p" |- p => p
//   2: ->-R premises=[1] principal="p -> p" |- => p -> p
//
// Step numbers start at 1 and premise lists use these numbers. Fields:
// premises, principal, side, t, t2, x, y.
class DerivationFormatError : public Error {
 public:
  DerivationFormatError(int line, Violation code, const std::string& message);
  int line() const { return line_; }
  // UnknownRule for unrecognised rule names, Malformed otherwise.
  Violation code() const { return code_; }

 private:
  int line_;
  Violation code_;
};

Derivation parse_derivation(std::string_view text);
std::string print_derivation(const Derivation& d);

}  // namespace bd4

#endif  // BD4_KERNEL_HPP
