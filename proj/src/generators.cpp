#include "bd4/generators.hpp"

#include <algorithm>

namespace bd4 {

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

namespace {

Formula random_prop_leaf(Rng& rng, const PropGenOptions& o) {
  int leaves = static_cast<int>(o.atoms.size()) + (o.falsity ? 1 : 0);
  for (Connective c : o.extra)
    if (connective_arity(c) == 0) ++leaves;
  int k = uniform(rng, 0, leaves - 1);
  if (k < static_cast<int>(o.atoms.size())) return Formula::prop(o.atoms[k]);
  k -= static_cast<int>(o.atoms.size());
  if (o.falsity) {
    if (k == 0) return Formula::falsity();
    --k;
  }
  for (Connective c : o.extra)
    if (connective_arity(c) == 0 && k-- == 0) return Formula::conn(c);
  return Formula::prop(o.atoms.front());
}

Formula random_prop(Rng& rng, const PropGenOptions& o, int depth) {
  if (depth == 0 || uniform(rng, 0, 3) == 0) return random_prop_leaf(rng, o);
  std::vector<Connective> unary;
  for (Connective c : o.extra)
    if (connective_arity(c) == 1) unary.push_back(c);
  int choice = uniform(rng, 0, 3 + static_cast<int>(unary.size()));
  switch (choice) {
    case 0: return Formula::neg(random_prop(rng, o, depth - 1));
    case 1: return Formula::conj(random_prop(rng, o, depth - 1), random_prop(rng, o, depth - 1));
    case 2: return Formula::disj(random_prop(rng, o, depth - 1), random_prop(rng, o, depth - 1));
    case 3:
      return Formula::implies(random_prop(rng, o, depth - 1), random_prop(rng, o, depth - 1));
    default:
      return Formula::conn(unary[choice - 4], {random_prop(rng, o, depth - 1)});
  }
}

}  // namespace

Formula random_prop_formula(Rng& rng, const PropGenOptions& options) {
  if (options.atoms.empty() && !options.falsity) throw Error("no leaves to generate from");
  return random_prop(rng, options, options.max_depth);
}

std::vector<Formula> enumerate_prop_formulas(const std::vector<std::string>& atoms,
                                             int max_depth, bool falsity) {
  // by_depth[d]: formulas of depth exactly d.
  std::vector<std::vector<Formula>> by_depth(1);
  for (const auto& a : atoms) by_depth[0].push_back(Formula::prop(a));
  if (falsity) by_depth[0].push_back(Formula::falsity());
  std::sort(by_depth[0].begin(), by_depth[0].end());
  std::vector<Formula> upto = by_depth[0];  // depth < current
  for (int d = 1; d <= max_depth; ++d) {
    const auto& prev = by_depth[d - 1];
    std::vector<Formula> level;
    for (const auto& a : prev) level.push_back(Formula::neg(a));
    // Binary nodes with at least one child of depth d-1.
    for (const auto& l : upto)
      for (const auto& r : upto) {
        if (l.depth() != d - 1 && r.depth() != d - 1) continue;
        level.push_back(Formula::conj(l, r));
        level.push_back(Formula::disj(l, r));
        level.push_back(Formula::implies(l, r));
      }
    std::sort(level.begin(), level.end());
    by_depth.push_back(level);
    upto.insert(upto.end(), level.begin(), level.end());
  }
  return upto;
}

namespace {

Term random_term(Rng& rng, const FoGenOptions& o) {
  int n = static_cast<int>(o.constants.size() + o.variables.size());
  int k = uniform(rng, 0, n - 1);
  if (k < static_cast<int>(o.constants.size())) return Term::function(o.constants[k]);
  return Term::variable(o.variables[k - o.constants.size()]);
}

Formula random_fo(Rng& rng, const FoGenOptions& o, int depth) {
  if (depth == 0 || uniform(rng, 0, 3) == 0) {
    int choices = static_cast<int>(o.unary_predicates.size()) + 1 + (o.equality ? 1 : 0);
    int k = uniform(rng, 0, choices - 1);
    if (k < static_cast<int>(o.unary_predicates.size()))
      return Formula::pred(o.unary_predicates[k], {random_term(rng, o)});
    if (k == static_cast<int>(o.unary_predicates.size())) return Formula::falsity();
    return Formula::eq(random_term(rng, o), random_term(rng, o));
  }
  auto var = [&] { return o.variables[uniform(rng, 0, static_cast<int>(o.variables.size()) - 1)]; };
  switch (uniform(rng, 0, 5)) {
    case 0: return Formula::neg(random_fo(rng, o, depth - 1));
    case 1: return Formula::conj(random_fo(rng, o, depth - 1), random_fo(rng, o, depth - 1));
    case 2: return Formula::disj(random_fo(rng, o, depth - 1), random_fo(rng, o, depth - 1));
    case 3: return Formula::implies(random_fo(rng, o, depth - 1), random_fo(rng, o, depth - 1));
    case 4: return Formula::forall(var(), random_fo(rng, o, depth - 1));
    default: return Formula::exists(var(), random_fo(rng, o, depth - 1));
  }
}

}  // namespace

Formula random_fo_formula(Rng& rng, const FoGenOptions& options) {
  if (options.unary_predicates.empty() || options.variables.empty())
    throw Error("first-order generation needs predicates and variables");
  return random_fo(rng, options, options.max_depth);
}

}  // namespace bd4
