#include "bd4/proof_search.hpp"

#include <map>

namespace bd4 {

namespace {

struct BudgetExceeded {};

bool searchable(const Formula& a) {
  switch (a.op()) {
    case Op::False:
    case Op::Prop:
      return true;
    case Op::Conn:
      return a.subs().empty();
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies:
      for (const auto& s : a.subs())
        if (!searchable(s)) return false;
      return true;
    default:
      return false;
  }
}

enum class Shape { Closure, Single, Branching, None };

struct Move {
  Rule rule;
  Formula principal;
  std::vector<Sequent> premises;
};

class Searcher {
 public:
  explicit Searcher(const SearchBudget& budget) : budget_(budget) {}

  // Returns the step index of a proof of s, or nullopt if a branch stays
  // open.
  std::optional<int> prove(const Sequent& s, int depth) {
    if (auto it = memo_.find(key(s)); it != memo_.end()) return it->second;
    if (++nodes_ > budget_.max_nodes || depth > budget_.max_depth) throw BudgetExceeded{};
    std::optional<int> result = expand(s, depth);
    memo_.emplace(key(s), result);
    return result;
  }

  std::vector<Step> steps;
  std::int64_t nodes() const { return nodes_; }

 private:
  static std::pair<FormulaSet, FormulaSet> key(const Sequent& s) {
    return {s.antecedent, s.succedent};
  }

  int emit(const Sequent& s, Rule rule, std::optional<Formula> principal, std::vector<int> premises) {
    Step step;
    step.conclusion = s;
    step.rule = rule;
    step.principal = std::move(principal);
    step.premises = std::move(premises);
    steps.push_back(std::move(step));
    return static_cast<int>(steps.size()) - 1;
  }

  std::optional<int> expand(const Sequent& s, int depth) {
    // Closure.
    for (const auto& a : s.antecedent) {
      if (a.op() == Op::False) return emit(s, Rule::FalsityL, std::nullopt, {});
      if (a.is_literal() && set_contains(s.succedent, a)) return emit(s, Rule::Id, a, {});
    }
    for (const auto& a : s.succedent)
      if (a.op() == Op::Not && a.sub().op() == Op::False) return emit(s, Rule::NotFalsityR, std::nullopt, {});

    std::optional<Move> branching;
    for (const auto& a : s.antecedent) {
      auto m = left_move(s, a);
      if (!m) continue;
      if (m->premises.size() == 1) return apply(s, *m, depth);
      if (!branching) branching = std::move(m);
    }
    for (const auto& a : s.succedent) {
      auto m = right_move(s, a);
      if (!m) continue;
      if (m->premises.size() == 1) return apply(s, *m, depth);
      if (!branching) branching = std::move(m);
    }
    if (branching) return apply(s, *branching, depth);

    // Only literals remain: the negation packs move atoms across, keeping
    // the negated formula in place.
    if (budget_.packs.not_left)
      for (const auto& a : s.antecedent)
        if (a.op() == Op::Not && a.sub().op() != Op::False && !set_contains(s.succedent, a.sub())) {
          Sequent p = s;
          p.succedent = set_union(p.succedent, {a.sub()});
          return apply(s, Move{Rule::NotL, a, {p}}, depth);
        }
    if (budget_.packs.not_right)
      for (const auto& a : s.succedent)
        if (a.op() == Op::Not && a.sub().op() != Op::False && !set_contains(s.antecedent, a.sub())) {
          Sequent p = s;
          p.antecedent = set_union(p.antecedent, {a.sub()});
          return apply(s, Move{Rule::NotR, a, {p}}, depth);
        }
    return std::nullopt;
  }

  std::optional<int> apply(const Sequent& s, const Move& m, int depth) {
    std::vector<int> premises;
    for (const auto& p : m.premises) {
      auto r = prove(p, depth + 1);
      if (!r) return std::nullopt;
      premises.push_back(*r);
    }
    return emit(s, m.rule, m.principal, std::move(premises));
  }

  static Sequent left(const Sequent& s, const Formula& drop, std::vector<Formula> add_left,
                      std::vector<Formula> add_right = {}) {
    Sequent out;
    out.antecedent = set_union(set_difference(s.antecedent, {drop}), make_set(std::move(add_left)));
    out.succedent = set_union(s.succedent, make_set(std::move(add_right)));
    return out;
  }
  static Sequent right(const Sequent& s, const Formula& drop, std::vector<Formula> add_right,
                       std::vector<Formula> add_left = {}) {
    Sequent out;
    out.antecedent = set_union(s.antecedent, make_set(std::move(add_left)));
    out.succedent = set_union(set_difference(s.succedent, {drop}), make_set(std::move(add_right)));
    return out;
  }

  static std::optional<Move> left_move(const Sequent& s, const Formula& a) {
    switch (a.op()) {
      case Op::And:
        return Move{Rule::AndL, a, {left(s, a, {a.sub(0), a.sub(1)})}};
      case Op::Or:
        return Move{Rule::OrL, a, {left(s, a, {a.sub(0)}), left(s, a, {a.sub(1)})}};
      case Op::Implies:
        return Move{Rule::ImpL, a, {left(s, a, {}, {a.sub(0)}), left(s, a, {a.sub(1)})}};
      case Op::Not: {
        const Formula& b = a.sub();
        switch (b.op()) {
          case Op::Not:
            return Move{Rule::NotNotL, a, {left(s, a, {b.sub()})}};
          case Op::And:
            return Move{Rule::NotAndL, a,
                        {left(s, a, {Formula::neg(b.sub(0))}), left(s, a, {Formula::neg(b.sub(1))})}};
          case Op::Or:
            return Move{Rule::NotOrL, a, {left(s, a, {Formula::neg(b.sub(0)), Formula::neg(b.sub(1))})}};
          case Op::Implies:
            return Move{Rule::NotImpL, a, {left(s, a, {b.sub(0), Formula::neg(b.sub(1))})}};
          default:
            return std::nullopt;
        }
      }
      default:
        return std::nullopt;
    }
  }

  static std::optional<Move> right_move(const Sequent& s, const Formula& a) {
    switch (a.op()) {
      case Op::And:
        return Move{Rule::AndR, a, {right(s, a, {a.sub(0)}), right(s, a, {a.sub(1)})}};
      case Op::Or:
        return Move{Rule::OrR, a, {right(s, a, {a.sub(0), a.sub(1)})}};
      case Op::Implies:
        return Move{Rule::ImpR, a, {right(s, a, {a.sub(1)}, {a.sub(0)})}};
      case Op::Not: {
        const Formula& b = a.sub();
        switch (b.op()) {
          case Op::Not:
            return Move{Rule::NotNotR, a, {right(s, a, {b.sub()})}};
          case Op::And:
            return Move{Rule::NotAndR, a, {right(s, a, {Formula::neg(b.sub(0)), Formula::neg(b.sub(1))})}};
          case Op::Or:
            return Move{Rule::NotOrR, a,
                        {right(s, a, {Formula::neg(b.sub(0))}), right(s, a, {Formula::neg(b.sub(1))})}};
          case Op::Implies:
            return Move{Rule::NotImpR, a, {right(s, a, {b.sub(0)}), right(s, a, {Formula::neg(b.sub(1))})}};
          default:
            return std::nullopt;
        }
      }
      default:
        return std::nullopt;
    }
  }

  const SearchBudget& budget_;
  std::int64_t nodes_ = 0;
  std::map<std::pair<FormulaSet, FormulaSet>, std::optional<int>> memo_;
};

// Keeps only the steps reachable from the last one, renumbered in order.
std::vector<Step> prune(std::vector<Step> steps) {
  std::vector<bool> live(steps.size(), false);
  live.back() = true;
  for (int i = static_cast<int>(steps.size()) - 1; i >= 0; --i)
    if (live[i])
      for (int p : steps[i].premises) live[p] = true;
  std::vector<int> index(steps.size(), -1);
  std::vector<Step> out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!live[i]) continue;
    index[i] = static_cast<int>(out.size());
    Step s = std::move(steps[i]);
    for (int& p : s.premises) p = index[p];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::string_view status_name(SearchResult::Status s) {
  switch (s) {
    case SearchResult::Status::Proof:
      return "proof";
    case SearchResult::Status::Countermodel:
      return "countermodel";
    case SearchResult::Status::Exhausted:
      return "exhausted";
  }
  return "?";
}

Decision decide_prop(const Sequent& s, ValueSet values) {
  PropResult r = consequence_prop(s, values);
  return {r.holds, r.witness};
}

SearchResult prove_prop(const Sequent& s, const SearchBudget& budget) {
  if (budget.max_depth <= 0 || budget.max_nodes <= 0) throw Error("search bounds must be positive");
  for (const auto* side : {&s.antecedent, &s.succedent})
    for (const auto& a : *side)
      if (!searchable(a)) throw Error("proof search handles only F, ~, &, |, -> over proposition symbols");

  SearchResult result;
  Searcher searcher(budget);
  std::optional<int> root;
  try {
    root = searcher.prove(s, 0);
  } catch (const BudgetExceeded&) {
    result.nodes = searcher.nodes();
    result.budget_exceeded = true;
    return result;
  }
  result.nodes = searcher.nodes();
  if (root) {
    Derivation d;
    searcher.steps.resize(*root + 1);
    d.steps = prune(std::move(searcher.steps));
    d.packs = budget.packs;
    std::vector<Formula> all(s.antecedent.begin(), s.antecedent.end());
    all.insert(all.end(), s.succedent.begin(), s.succedent.end());
    d.signature = Signature::of(all);
    CheckResult check = check_derivation(d);
    if (!check) throw std::logic_error("proof search produced an invalid step: " + check.message);
    result.status = SearchResult::Status::Proof;
    result.proof = std::move(d);
    return result;
  }
  Decision decision = decide_prop(s, budget.packs.values());
  if (!decision.valid) {
    result.status = SearchResult::Status::Countermodel;
    result.countermodel = decision.witness;
  }
  return result;
}

}  // namespace bd4
