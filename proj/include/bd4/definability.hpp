// Truth functions, definability in the implication-falsity expansion of BD,
// clone closure, and checks of defining formulas.
//
// A truth function of arity n is a table of 4^n values. Argument tuples are
// indexed with the first argument most significant, each argument in the
// order t, b, n, f.

#ifndef BD4_DEFINABILITY_HPP
#define BD4_DEFINABILITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bd4/syntax.hpp"
#include "bd4/truth_value.hpp"

namespace bd4 {

class TruthFunction {
 public:
  TruthFunction() = default;
  TruthFunction(int arity, std::vector<TruthValue> table);

  static TruthFunction constant(int arity, TruthValue v);
  static TruthFunction projection(int arity, int i);
  // Letters t/b/n/f in index order; whitespace is ignored, so binary tables
  // may be written as four rows.
  static TruthFunction parse(int arity, std::string_view text);

  int arity() const { return arity_; }
  std::span<const TruthValue> table() const { return table_; }
  TruthValue operator()(std::span<const TruthValue> args) const;
  TruthValue at(std::size_t index) const { return table_[index]; }

  // Base-4 packing of the table; unique per arity for arity <= 2.
  std::uint64_t code() const;
  // Rows of four letters separated by spaces ("tbnf" for unary).
  std::string to_string() const;

  friend bool operator==(const TruthFunction&, const TruthFunction&) = default;

 private:
  int arity_ = 0;
  std::vector<TruthValue> table_ = {TruthValue::f};
};

// Tables of the standard and extra connectives: "F", "~", "&", "|", "->",
// and the names Des, Norm, Cons, Det, Confl, Both, Neither. Also "id".
TruthFunction named_function(std::string_view name);

// The symbols a defining formula may use.
class ConnectiveSet {
 public:
  enum Symbol : std::uint8_t {
    kFalsity, kNeg, kConj, kDisj, kImp, kDes, kNorm, kCons, kDet, kConfl, kBoth, kNeither,
    kSymbolCount
  };

  ConnectiveSet() = default;
  ConnectiveSet(std::initializer_list<Symbol> symbols);

  // The connectives of BD with implication and falsity: F ~ & | ->.
  static ConnectiveSet bd_base();
  // Space or comma separated symbol names, e.g. "~ & | Norm".
  static ConnectiveSet parse(std::string_view text);

  bool contains(Symbol s) const { return (bits_ >> s) & 1u; }
  ConnectiveSet with(Symbol s) const;
  std::string to_string() const;
  // Tables of the members, in symbol order.
  std::vector<TruthFunction> functions() const;
  // Symbols used by a formula; throws Error on quantifiers, predicates or
  // equality.
  static ConnectiveSet of(const Formula& a);
  bool includes(const ConnectiveSet& other) const { return (other.bits_ & ~bits_) == 0; }

 private:
  std::uint16_t bits_ = 0;
};

// The function induced by `a` on the given atoms (the first atom is the first
// argument). Throws Error if `a` uses a connective outside `allowed` or an
// atom not in `atoms`.
TruthFunction truth_function_of(const Formula& a, const std::vector<std::string>& atoms,
                                const ConnectiveSet& allowed);
// Uses all connectives and the atoms p1..pn for the given arity.
TruthFunction truth_function_of(const Formula& a, int arity);

// Preservation of {t,f,b} and of {t,f,n}: the exact condition for a truth
// function to be definable from F, ~, &, |, ->.
bool is_definable_criterion(const TruthFunction& g);

// All functions of the given arity obtained from the projections and `base`
// by composition. Throws Error once more than `cap` functions are found.
std::vector<TruthFunction> clone_closure(std::span<const TruthFunction> base, int arity,
                                         std::size_t cap = 100000);

struct ConnectiveDef {
  std::string name;
  std::vector<std::string> params;  // p1..pn
  Formula formula;
  ConnectiveSet base;
};

// Checks that the defining formula stays inside its base and computes the
// target table. Throws Error when the arities differ.
bool verify_definition(const ConnectiveDef& d, const TruthFunction& target);

// The defining formulas Des, Norm, Cons, Det in terms of F, ~, &, |, ->.
std::vector<ConnectiveDef> standard_definitions();

struct EquivalenceCheck {
  std::string lhs;
  std::string rhs;
  bool holds = false;
  std::string first_difference;  // "p1=B: t vs f" when !holds
};

// The synonymities that relate the expansions by ->/F, Des, Cons/Det, Norm
// and Both/Neither.
std::vector<EquivalenceCheck> check_expansion_equivalences();

// Compares two formulas as truth functions of the union of their atoms.
EquivalenceCheck compare_tables(const Formula& lhs, const Formula& rhs);

// Least formula (by connective count, then printed form) over p1..pn using
// `allowed` with at most `max_connectives` connectives whose table is
// `target`. Failure is inconclusive.
std::optional<Formula> find_definition(const TruthFunction& target, const ConnectiveSet& allowed,
                                       int max_connectives);

// Whether every pair of distinct values is separated by some unary function
// in `unary_clone`: one value designated under it and the other not.
bool separates_values(std::span<const TruthFunction> unary_clone);

}  // namespace bd4

#endif  // BD4_DEFINABILITY_HPP
