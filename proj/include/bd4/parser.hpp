// Concrete ASCII syntax.
//
//   F  T  ~A  A & B  A | B  A -> B  forall x. A  exists x. A
//   t1 = t2   t1 != t2   P(t1, ..., tn)   p   Des A ... Both Neither
//
// Precedence from tightest: ~ and the unary extra connectives, &, |, ->.
// & and | associate to the left, -> to the right. A quantifier's scope
// extends as far right as possible.
//
// In term position an identifier that the signature does not declare is a
// variable. In formula position every symbol must be declared, unless the
// parse is run with symbol inference, in which case undeclared predicates,
// propositions, functions and extra connectives are added to the signature
// as they are encountered.

#ifndef BD4_PARSER_HPP
#define BD4_PARSER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bd4/syntax.hpp"

namespace bd4 {

class ParseError : public Error {
 public:
  enum class Kind { Lexical, Syntax, Arity, UnknownSymbol, Quantifier };

  ParseError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const { return kind_; }
  // Byte offset into the parsed text.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

std::string_view parse_error_kind_name(ParseError::Kind kind);

Formula parse_formula(std::string_view text, const Signature& sig);
Term parse_term(std::string_view text, const Signature& sig);
// Comma- or semicolon-separated formulas; empty text is the empty list.
std::vector<Formula> parse_formula_list(std::string_view text, const Signature& sig);
// "A, B |- C" or "A; B => C". Either side may be empty.
Sequent parse_sequent(std::string_view text, const Signature& sig);

// The same, declaring undeclared symbols in `sig`.
Formula parse_formula_infer(std::string_view text, Signature& sig);
std::vector<Formula> parse_formula_list_infer(std::string_view text, Signature& sig);
Sequent parse_sequent_infer(std::string_view text, Signature& sig);

std::string print_term(const Term& t);
// Minimal parentheses; parse_formula(print_formula(A)) == A.
std::string print_formula(const Formula& a);
std::string print_formula_list(const FormulaSet& formulas, std::string_view separator = ", ");
std::string print_sequent(const Sequent& s, std::string_view separator = ", ",
                          std::string_view turnstile = " |- ");

}  // namespace bd4

#endif  // BD4_PARSER_HPP
