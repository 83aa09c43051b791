// Hand-written derivations covering every rule of the calculus and the two
// packs, plus single-edit corruptions of them with the violation each must
// produce.

#ifndef BD4_CORPUS_HPP
#define BD4_CORPUS_HPP

#include <string>
#include <utility>
#include <vector>

#include "bd4/kernel.hpp"

namespace bd4 {

struct CorpusEntry {
  std::string name;
  std::string text;  // derivation file contents
  // For proofs that use =-Refl or =-Repl: the name of a proof of the same
  // sequent, extended by equality axioms, that uses neither rule.
  std::string equality_free_companion;
};

const std::vector<CorpusEntry>& proof_corpus();
const CorpusEntry& corpus_entry(const std::string& name);

struct Mutation {
  std::string name;
  std::string base;  // corpus entry name, or empty when `text` is standalone
  std::vector<std::pair<std::string, std::string>> edits;  // first-occurrence replacements
  std::string text;
  Violation expected;
};

const std::vector<Mutation>& mutation_suite();

// The mutated file text. Throws Error if an edit does not apply.
std::string mutated_text(const Mutation& m);

// Parses and checks; a parse failure yields its format error code.
CheckResult check_text(const std::string& text);

}  // namespace bd4

#endif  // BD4_CORPUS_HPP
