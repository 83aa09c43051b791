// Random instances of the sequent rules, for testing soundness against the
// semantics. Each instance is confirmed legal by the kernel before it is
// returned.

#ifndef BD4_RULE_INSTANCES_HPP
#define BD4_RULE_INSTANCES_HPP

#include <vector>

#include "bd4/generators.hpp"
#include "bd4/kernel.hpp"

namespace bd4 {

struct RuleInstance {
  Step step;  // conclusion and instantiation record
  std::vector<Sequent> premises;
};

struct InstanceOptions {
  PropGenOptions prop{{"p", "q", "r"}, 2, true, {}};
  FoGenOptions fo{{"P", "Q"}, {"c"}, {"x", "y"}, false, 2};
  int max_context = 2;  // formulas added to each side
};

// Quantifier, equality and denotation rules need structures; the rest are
// checked over valuations.
bool is_first_order_rule(Rule r);

// Throws Error for Hypothesis, and std::logic_error if the kernel rejects
// the generated step.
RuleInstance random_rule_instance(Rule r, Rng& rng, const InstanceOptions& options = {});

}  // namespace bd4

#endif  // BD4_RULE_INSTANCES_HPP
