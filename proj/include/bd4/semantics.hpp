// Evaluation of formulas in the four-valued matrix: propositional
// valuations, finite first-order structures (total or with an undefined
// element), and brute-force consequence checking over both.

#ifndef BD4_SEMANTICS_HPP
#define BD4_SEMANTICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bd4/syntax.hpp"
#include "bd4/truth_value.hpp"

namespace bd4 {

// Truth functions of the extra connectives. Nullary ones ignore `a`.
TruthValue apply_connective(Connective c, TruthValue a = TruthValue::t);

// ---------------------------------------------------------------------------
// Propositional fragment

class Valuation {
 public:
  Valuation() = default;
  Valuation(std::initializer_list<std::pair<const std::string, TruthValue>> values)
      : values_(values) {}

  void set(const std::string& atom, TruthValue v) { values_[atom] = v; }
  // Throws if the atom is unassigned.
  TruthValue at(const std::string& atom) const;
  bool contains(const std::string& atom) const { return values_.contains(atom); }
  const std::map<std::string, TruthValue>& values() const { return values_; }

  // "p=B q=F"
  std::string to_string() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::map<std::string, TruthValue> values_;
};

// Throws Error on non-propositional input or unassigned atoms.
TruthValue evaluate(const Formula& a, const Valuation& v);

// A propositional formula compiled against a fixed atom list for fast
// repeated evaluation.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& a, const std::vector<std::string>& atoms);
  // values[i] is the value of atoms[i].
  TruthValue evaluate(std::span<const TruthValue> values) const;

 private:
  struct Instr {
    Op op;
    Connective conn;
    int atom;
  };
  std::vector<Instr> code_;
};

// Calls fn(values) for every assignment of `allowed` values to `count`
// atoms. The first atom varies slowest; values are tried in the order
// t, f, b, n. Stops early when fn returns false; returns false in that case.
template <typename Fn>
bool for_each_valuation(int count, ValueSet allowed, Fn&& fn);

struct PropResult {
  bool holds = false;
  std::optional<Valuation> witness;  // set when !holds
};

// Gamma |= Delta over valuations into `allowed`, which must be one of the
// four value sets closed under the operations.
PropResult consequence_prop(std::span<const Formula> gamma, std::span<const Formula> delta,
                            ValueSet allowed = kFourValues);
PropResult consequence_prop(const Sequent& s, ValueSet allowed = kFourValues);

// Same value under every valuation; the witness distinguishes them.
PropResult equivalent_prop(const Formula& a, const Formula& b);
// A |= B, B |= A, ~A |= ~B and ~B |= ~A.
PropResult synonymous_prop(const Formula& a, const Formula& b);

// ---------------------------------------------------------------------------
// First-order structures

enum class StructureMode : std::uint8_t { Total, Partial };

// How `=` may be interpreted.
//  Strict: equal elements get a designated value, distinct elements a
//    non-designated one. With an undefined element: any pair involving it
//    gets n, equal defined elements t or b, distinct defined elements f.
//  Loose: only the equal-elements case is constrained (designated); with an
//    undefined element, pairs involving it get n.
enum class EqualityMode : std::uint8_t { Strict, Loose };

// Values `=` may take on the pair (d1, d2).
ValueSet equality_choices(StructureMode mode, EqualityMode eq, int d1, int d2);

struct FunctionTable {
  int arity = 0;
  std::vector<int> values;  // indexed by the argument tuple, first argument most significant
};

struct PredicateTable {
  int arity = 0;
  std::vector<TruthValue> values;
};

struct Structure {
  std::vector<std::string> elements;
  StructureMode mode = StructureMode::Total;  // Partial: element 0 is undefined
  std::map<std::string, FunctionTable> functions;    // constants have arity 0
  std::map<std::string, PredicateTable> predicates;  // propositions have arity 0
  std::vector<TruthValue> equality;                  // size*size entries

  int size() const { return static_cast<int>(elements.size()); }
  bool is_bottom(int d) const { return mode == StructureMode::Partial && d == 0; }

  int function_value(const std::string& name, std::span<const int> args) const;
  TruthValue predicate_value(const std::string& name, std::span<const int> args) const;
  TruthValue equality_value(int d1, int d2) const { return equality[d1 * size() + d2]; }
  TruthValue& equality_at(int d1, int d2) { return equality[d1 * size() + d2]; }

  // Checks table sizes and the constraints of `eq`; throws Error.
  void validate(EqualityMode eq = EqualityMode::Strict) const;
};

// Index of an argument tuple in a table over a domain of size n.
std::size_t tuple_index(std::span<const int> args, int n);

// Structure file: `domain d1 d2 ...`, `bottom d1`, `const c = d1`,
// `func f d1 d2 -> d1`, `pred P d1 = T`, `prop p = T`, `eq d1 d2 = N`.
// Predicate entries default to F, equality entries to t, f or n
// (equal, distinct, involving the undefined element). Every function entry
// must be given.
Structure parse_structure(std::string_view text);
std::string print_structure(const Structure& m);

using Assignment = std::map<std::string, int>;

std::string print_assignment(const Assignment& alpha, const Structure& m);

// Throws Error on an unbound variable or a symbol the structure lacks.
int evaluate(const Term& t, const Structure& m, const Assignment& alpha);
TruthValue evaluate(const Formula& a, const Structure& m, const Assignment& alpha = {});

struct FoOptions {
  int max_domain = 3;
  StructureMode mode = StructureMode::Total;
  EqualityMode equality = EqualityMode::Strict;
  // Limit on structures times assignments examined.
  std::uint64_t cap = 10'000'000;
  // Predicate and proposition values are drawn from this set.
  ValueSet allowed = kFourValues;
};

struct FoResult {
  enum class Status { NoCountermodel, Countermodel, BoundExceeded };
  Status status = Status::NoCountermodel;
  std::optional<Structure> structure;
  Assignment assignment;
  // Largest domain size searched exhaustively.
  int searched_up_to = 0;
  std::uint64_t examined = 0;
};

// Searches all structures of domain size up to max_domain (at least 2 in
// partial mode) over the symbols occurring in the formulas, smallest domain
// first. The search stops with BoundExceeded before a domain size whose
// enumeration would push the work past the cap.
FoResult consequence_fo(std::span<const Formula> gamma, std::span<const Formula> delta,
                        const FoOptions& options = {});
FoResult consequence_fo(const Sequent& s, const FoOptions& options = {});

// Truth preservation for a rule instance: every model of all premises is a
// model of the conclusion. A sequent holds in a structure when it holds
// under every assignment, and under a valuation when some antecedent is
// undesignated or some succedent designated.
struct RulePreservation {
  bool holds = true;
  bool bound_exceeded = false;
  std::uint64_t examined = 0;        // valuations or structures
  std::uint64_t premise_models = 0;  // of those, how many satisfied every premise
  std::optional<Valuation> counter_valuation;
  std::optional<Structure> counter_structure;
};

RulePreservation preserves_truth_prop(std::span<const Sequent> premises, const Sequent& conclusion,
                                      ValueSet allowed = kFourValues);
RulePreservation preserves_truth_fo(std::span<const Sequent> premises, const Sequent& conclusion,
                                    const FoOptions& options = {});

// Counts the structures times assignments the search would examine for
// one domain size.
std::uint64_t fo_search_size(std::span<const Formula> formulas, int domain,
                             const FoOptions& options);

// ---------------------------------------------------------------------------

struct NormalityReport {
  struct Property {
    std::string name;
    int instances = 0;
    int failures = 0;
    std::string first_failure;
  };
  std::vector<Property> properties;
  bool all_hold() const;
};

// Samples instances of the defining biconditionals of normality: the two
// non-inclusions on atoms, the splits of & on the right and | on the left,
// the deduction theorem and the two quantifier conditions (the latter on
// domains of size at most 2).
NormalityReport normality_probe(std::uint64_t seed, int samples);

// ---------------------------------------------------------------------------

template <typename Fn>
bool for_each_valuation(int count, ValueSet allowed, Fn&& fn) {
  std::vector<TruthValue> order;
  for (TruthValue v : kEnumerationOrder)
    if (allowed.contains(v)) order.push_back(v);
  const int k = static_cast<int>(order.size());
  std::vector<int> digits(count, 0);
  std::vector<TruthValue> values(count, order.empty() ? TruthValue::t : order[0]);
  if (k == 0) return true;
  while (true) {
    if (!fn(std::span<const TruthValue>(values))) return false;
    int i = count - 1;
    while (i >= 0 && digits[i] == k - 1) {
      digits[i] = 0;
      values[i] = order[0];
      --i;
    }
    if (i < 0) return true;
    ++digits[i];
    values[i] = order[digits[i]];
  }
}

}  // namespace bd4

#endif  // BD4_SEMANTICS_HPP
