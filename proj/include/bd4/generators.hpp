// Random and exhaustive formula generation for property tests and the
// acceptance suites.

#ifndef BD4_GENERATORS_HPP
#define BD4_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bd4/syntax.hpp"

namespace bd4 {

using Rng = std::mt19937_64;

struct PropGenOptions {
  std::vector<std::string> atoms = {"p", "q"};
  int max_depth = 2;
  bool falsity = true;
  // Extra unary/nullary connectives that may appear.
  std::vector<Connective> extra;
};

// A random propositional formula over ~, &, |, -> and the options' leaves.
Formula random_prop_formula(Rng& rng, const PropGenOptions& options);

// Every propositional formula over ~, &, |, -> whose leaves are the
// atoms (and F if requested) with depth at most max_depth, atoms having
// depth 0. Ordered by depth, then by the formula order.
std::vector<Formula> enumerate_prop_formulas(const std::vector<std::string>& atoms,
                                             int max_depth, bool falsity = true);

struct FoGenOptions {
  std::vector<std::string> unary_predicates = {"P", "Q"};
  std::vector<std::string> constants = {"c"};
  std::vector<std::string> variables = {"x", "y"};
  bool equality = false;
  int max_depth = 2;
};

// A random first-order formula; free variables are drawn from the
// options' variables.
Formula random_fo_formula(Rng& rng, const FoGenOptions& options);

// Uniform integer in [lo, hi].
int uniform(Rng& rng, int lo, int hi);

}  // namespace bd4

#endif  // BD4_GENERATORS_HPP
