// Backward proof search for propositional sequents, without Cut.
//
// Every propositional rule of the calculus is invertible, so the search
// never backtracks: it decomposes one formula at a time until only literals
// remain and either closes every branch or stops at the first open one. A
// sequent that is not proved gets a countermodel from exhaustive valuation
// checking, never from the failed branch.

#ifndef BD4_PROOF_SEARCH_HPP
#define BD4_PROOF_SEARCH_HPP

#include <cstdint>
#include <optional>

#include "bd4/kernel.hpp"
#include "bd4/semantics.hpp"
#include "bd4/syntax.hpp"

namespace bd4 {

struct SearchBudget {
  int max_depth = 200;          // rule applications on any branch
  std::int64_t max_nodes = 1'000'000;
  Packs packs;
};

struct SearchResult {
  enum class Status { Proof, Countermodel, Exhausted };
  Status status = Status::Exhausted;
  std::optional<Derivation> proof;
  std::optional<Valuation> countermodel;
  std::int64_t nodes = 0;  // sequents visited
  // Set when the search ran out of budget rather than getting stuck.
  bool budget_exceeded = false;
};

std::string_view status_name(SearchResult::Status s);  // "proof", ...

// The formulas must be propositional and free of the extra unary
// connectives (Both and Neither are atoms and allowed); otherwise throws
// Error. Pack rules only apply when enabled in the budget; Den is
// irrelevant here.
SearchResult prove_prop(const Sequent& s, const SearchBudget& budget = {});

struct Decision {
  bool valid = false;
  std::optional<Valuation> witness;
};

// Exact decision over valuations into `values`.
Decision decide_prop(const Sequent& s, ValueSet values = kFourValues);

}  // namespace bd4

#endif  // BD4_PROOF_SEARCH_HPP
