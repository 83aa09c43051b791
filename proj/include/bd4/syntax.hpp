// Terms, formulas, signatures and sequents of BD with implication, falsity
// and the optional extra connectives.
//
// Terms and formulas are immutable trees with shared subterms; copying one is
// a reference-count increment. Structural equality and a fixed total order
// are provided so formulas can be kept in sorted sets.

#ifndef BD4_SYNTAX_HPP
#define BD4_SYNTAX_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bd4 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Connectives beyond F, ~, &, |, ->. Both and Neither are nullary, the rest
// unary.
enum class Connective : std::uint8_t { Des, Norm, Cons, Det, Confl, Both, Neither };

inline constexpr std::array<Connective, 7> kExtraConnectives = {
    Connective::Des,  Connective::Norm, Connective::Cons,   Connective::Det,
    Connective::Confl, Connective::Both, Connective::Neither};

int connective_arity(Connective c);
std::string_view connective_name(Connective c);
std::optional<Connective> connective_from_name(std::string_view name);

class Term {
 public:
  enum class Kind : std::uint8_t { Variable, Function };

  static Term variable(std::string name);
  // A constant is a function symbol applied to no arguments.
  static Term function(std::string name, std::vector<Term> args = {});

  Kind kind() const;
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_constant() const { return kind() == Kind::Function && args().empty(); }
  const std::string& name() const;
  std::span<const Term> args() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

int compare(const Term& a, const Term& b);
inline bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

enum class Op : std::uint8_t {
  False,    // the falsity constant
  Prop,     // proposition symbol
  Pred,     // predicate symbol applied to terms
  Eq,       // t1 = t2
  Conn,     // extra connective application
  Not,
  And,
  Or,
  Implies,
  Forall,
  Exists,
};

class Formula {
 public:
  static Formula falsity();
  static Formula truth();  // ~F
  static Formula prop(std::string name);
  static Formula pred(std::string name, std::vector<Term> args);
  static Formula eq(Term lhs, Term rhs);
  static Formula neq(Term lhs, Term rhs);  // ~(lhs = rhs)
  static Formula conn(Connective c, std::vector<Formula> args = {});
  static Formula neg(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Op op() const;
  // Proposition / predicate name, or the bound variable of a quantifier.
  const std::string& name() const;
  Connective connective() const;
  std::span<const Term> terms() const;
  std::span<const Formula> subs() const;
  const Formula& sub(std::size_t i = 0) const { return subs()[i]; }
  const Formula& body() const { return subs()[0]; }

  bool is_quantifier() const { return op() == Op::Forall || op() == Op::Exists; }
  bool is_binary() const {
    return op() == Op::And || op() == Op::Or || op() == Op::Implies;
  }
  // Proposition symbols, predicate applications, equalities, F and nullary
  // connectives.
  bool is_atomic() const;
  // Atomic or the negation of an atomic formula.
  bool is_literal() const;
  // No predicates of positive arity, no equality, no quantifiers.
  bool is_propositional() const;

  // Number of connective and quantifier occurrences (F and nullary
  // connectives count as one each).
  int connective_count() const;
  // Height of the syntax tree; atoms have depth 0.
  int depth() const;

  bool same_node(const Formula& other) const { return node_ == other.node_; }

 private:
  friend struct FormulaBuilder;
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Fixed total order: operator, then names, then children left to right.
int compare(const Formula& a, const Formula& b);
inline bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
inline bool operator!=(const Formula& a, const Formula& b) { return compare(a, b) != 0; }
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

using VarSet = std::set<std::string>;
using FormulaSet = std::vector<Formula>;  // sorted, duplicate-free

// Sorts and removes duplicates.
FormulaSet make_set(std::vector<Formula> formulas);
bool set_contains(const FormulaSet& set, const Formula& a);
FormulaSet set_union(const FormulaSet& a, const FormulaSet& b);
FormulaSet set_difference(const FormulaSet& a, const FormulaSet& b);
bool set_subset(const FormulaSet& a, const FormulaSet& b);

VarSet free_vars(const Term& t);
VarSet free_vars(const Formula& a);
VarSet free_vars(std::span<const Formula> formulas);
bool occurs_free(const std::string& x, const Formula& a);

// [x := t]e, renaming bound variables that would capture a variable of t.
// The new name is the least "<stem><k>", k = 1, 2, ..., not free in t, not
// free in the body and different from x.
Term substitute(const Term& e, const std::string& x, const Term& t);
Formula substitute(const Formula& e, const std::string& x, const Term& t);

// Least "<stem><k>" not in `avoid`, where stem is `base` without trailing
// digits.
std::string fresh_variable(const std::string& base, const VarSet& avoid);

// Atomic subformulas (including F and nullary connectives) of all members.
FormulaSet atomic_subformulas(std::span<const Formula> formulas);

// Proposition symbols occurring in the formulas, sorted.
std::vector<std::string> proposition_symbols(std::span<const Formula> formulas);

struct Sequent {
  FormulaSet antecedent;
  FormulaSet succedent;

  Sequent() = default;
  Sequent(std::vector<Formula> ante, std::vector<Formula> succ)
      : antecedent(make_set(std::move(ante))), succedent(make_set(std::move(succ))) {}

  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.antecedent == b.antecedent && a.succedent == b.succedent;
  }
};

// Symbol declarations. Constants are arity-0 functions and proposition
// symbols arity-0 predicates. Equality is always available and is not
// listed among the predicates.
class Signature {
 public:
  void add_function(const std::string& name, int arity);
  void add_constant(const std::string& name) { add_function(name, 0); }
  void add_predicate(const std::string& name, int arity);
  void add_proposition(const std::string& name) { add_predicate(name, 0); }
  void enable(Connective c) { connectives_ |= static_cast<std::uint8_t>(1u << static_cast<int>(c)); }

  std::optional<int> function_arity(const std::string& name) const;
  std::optional<int> predicate_arity(const std::string& name) const;
  bool enabled(Connective c) const { return (connectives_ >> static_cast<int>(c)) & 1u; }
  bool declares(const std::string& name) const;

  const std::map<std::string, int>& functions() const { return functions_; }
  const std::map<std::string, int>& predicates() const { return predicates_; }

  // Merges the declarations of `other`; conflicting arities throw.
  void merge(const Signature& other);

  // Line-oriented format: `func f/2`, `pred P/1`, `const c`, `prop p`,
  // `conn Des`. Blank lines and lines starting with '#' are ignored.
  static Signature parse(std::string_view text);
  std::string to_string() const;

  // Declares every symbol occurring in the formulas.
  static Signature of(std::span<const Formula> formulas);

 private:
  std::map<std::string, int> functions_;
  std::map<std::string, int> predicates_;
  std::uint8_t connectives_ = 0;
};

bool is_reserved_word(std::string_view word);

}  // namespace bd4

#endif  // BD4_SYNTAX_HPP
