// Candidate four-valued matrices with designated values {t, b}: the
// regularity and classical-closure predicates, the fifteen distinguishing
// laws of logical equivalence, and the exhaustive search for all regular,
// classically closed matrices satisfying a chosen subset of those laws.

#ifndef BD4_MATRIX_LAB_HPP
#define BD4_MATRIX_LAB_HPP

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bd4/syntax.hpp"
#include "bd4/truth_value.hpp"

namespace bd4 {

// Binary tables are indexed a*4 + b and quantifier tables by the ValueSet
// bit mask (entry 0 unused), both in the index order t, b, n, f.
struct Matrix4 {
  TruthValue falsity = TruthValue::f;
  std::array<TruthValue, 4> neg{};
  std::array<TruthValue, 16> conj{};
  std::array<TruthValue, 16> disj{};
  std::array<TruthValue, 16> imp{};
  std::array<TruthValue, 16> forall{};
  std::array<TruthValue, 16> exists{};

  TruthValue apply_neg(TruthValue a) const { return neg[index_of(a)]; }
  TruthValue apply_conj(TruthValue a, TruthValue b) const { return conj[index_of(a) * 4 + index_of(b)]; }
  TruthValue apply_disj(TruthValue a, TruthValue b) const { return disj[index_of(a) * 4 + index_of(b)]; }
  TruthValue apply_imp(TruthValue a, TruthValue b) const { return imp[index_of(a) * 4 + index_of(b)]; }
  TruthValue apply_forall(ValueSet v) const { return forall[v.bits()]; }
  TruthValue apply_exists(ValueSet v) const { return exists[v.bits()]; }

  friend bool operator==(const Matrix4&, const Matrix4&) = default;
};

// The matrix of BD with implication and falsity.
Matrix4 bd_matrix();

// Packs a table of up to 16 values as base-4 digits, first entry lowest.
std::uint32_t pack_table(std::span<const TruthValue> table);

// "neg=fbnt conj=tbnf... " using the lowercase value letters.
std::string describe_matrix(const Matrix4& m);

bool is_regular(const Matrix4& m);
bool is_classically_closed(const Matrix4& m);

// Value of a propositional formula (F, ~, &, |, ->) under the matrix.
// Proposition symbols take their values from `values`, looked up by
// position in `atoms`.
TruthValue evaluate_in(const Matrix4& m, const Formula& a, const std::vector<std::string>& atoms,
                       std::span<const TruthValue> values);

enum class MatrixSlot : std::uint8_t { Falsity, Neg, Conj, Disj, Imp, Forall, Exists };
inline constexpr int kSlotCount = 7;
std::string_view slot_name(MatrixSlot s);

struct LawInstance {
  int id;
  // Propositional laws: both sides over metavariables A, A1, A2.
  // Quantifier laws: the schema text only; checked algebraically.
  std::string lhs;
  std::string rhs;
  bool quantified = false;
  std::uint8_t slots = 0;  // bit per MatrixSlot the law mentions

  std::string text() const { return lhs + " == " + rhs; }
  bool uses(MatrixSlot s) const { return (slots >> static_cast<int>(s)) & 1u; }
};

// The fifteen distinguishing laws, indexed by id - 1.
const std::vector<LawInstance>& distinguishing_laws();
const LawInstance& law(int id);

struct LawCheck {
  bool holds = false;
  // "A1=B A2=N", or "V={t,b} A2=N" for the quantifier laws; empty if holds.
  std::string witness;
};

// Propositional laws: both sides agree under all assignments of the four
// values to the metavariables. Quantifier laws: Q(V') = op(Q(V), a2) where
// V' = {op(v, a2) : v in V}, for all nonempty V and all a2, with (Q, op) the
// universal quantifier with conjunction or the existential with disjunction.
LawCheck check_law(const Matrix4& m, const LawInstance& law);

// All tables for the slot meeting regularity and classical closure. Each
// table has 1 (F), 4 (~) or 16 entries; unused quantifier entry 0 is f.
std::vector<std::vector<TruthValue>> enumerate_candidates(MatrixSlot slot);

struct StageReport {
  MatrixSlot slot;
  std::size_t candidates = 0;   // tables for this slot
  std::uint64_t examined = 0;   // candidate tables tested over all branches
  std::uint64_t surviving = 0;  // of those, how many passed this stage's laws
  std::vector<int> laws;        // laws applied at this stage
};

struct UniquenessResult {
  std::vector<StageReport> stages;
  std::uint64_t survivors = 0;
  // Up to `keep` survivors; when later slots are independent of an earlier
  // choice only a representative is expanded, so this list can be partial.
  std::vector<Matrix4> matrices;
};

struct UniquenessOptions {
  std::set<int> dropped;
  // Order in which a stage applies its laws; empty means by id.
  std::vector<int> law_order;
  std::size_t keep = 16;
};

// Stages fix F, ~, &, |, ->, forall, exists in turn; each law filters at
// the first stage where every slot it mentions is fixed.
UniquenessResult uniqueness_search(const UniquenessOptions& options = {});

struct ClassicalLawReport {
  std::string law;
  bool holds = false;
  std::string witness;
};

// The five classical equivalences ~A == A -> F, A & ~A == F, A | ~A == T,
// F -> A == T and T -> A == A, checked over all values of A.
std::vector<ClassicalLawReport> check_classical_failures(const Matrix4& m);

}  // namespace bd4

#endif  // BD4_MATRIX_LAB_HPP
