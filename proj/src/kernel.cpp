#include "bd4/kernel.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <sstream>

#include "bd4/parser.hpp"

namespace bd4 {

namespace {

struct RuleInfo {
  Rule rule;
  std::string_view name;
};

constexpr std::array<RuleInfo, 33> kRules = {{
    {Rule::Id, "Id"},
    {Rule::Cut, "Cut"},
    {Rule::FalsityL, "F-L"},
    {Rule::AndL, "&-L"},
    {Rule::AndR, "&-R"},
    {Rule::OrL, "|-L"},
    {Rule::OrR, "|-R"},
    {Rule::ImpL, "->-L"},
    {Rule::ImpR, "->-R"},
    {Rule::ForallL, "forall-L"},
    {Rule::ForallR, "forall-R"},
    {Rule::ExistsL, "exists-L"},
    {Rule::ExistsR, "exists-R"},
    {Rule::NotFalsityR, "~F-R"},
    {Rule::NotNotL, "~~-L"},
    {Rule::NotNotR, "~~-R"},
    {Rule::NotAndL, "~&-L"},
    {Rule::NotAndR, "~&-R"},
    {Rule::NotOrL, "~|-L"},
    {Rule::NotOrR, "~|-R"},
    {Rule::NotImpL, "~->-L"},
    {Rule::NotImpR, "~->-R"},
    {Rule::NotForallL, "~forall-L"},
    {Rule::NotForallR, "~forall-R"},
    {Rule::NotExistsL, "~exists-L"},
    {Rule::NotExistsR, "~exists-R"},
    {Rule::EqRefl, "=-Refl"},
    {Rule::EqRepl, "=-Repl"},
    {Rule::NotL, "~-L"},
    {Rule::NotR, "~-R"},
    {Rule::DenL, "Den-L"},
    {Rule::DenR, "Den-R"},
    {Rule::Hypothesis, "hyp"},
}};

}  // namespace

std::string_view rule_name(Rule r) { return kRules[static_cast<int>(r)].name; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& info : kRules)
    if (info.name == name) return info.rule;
  return std::nullopt;
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> out;
    for (const auto& info : kRules)
      if (info.rule != Rule::Hypothesis) out.push_back(info.rule);
    return out;
  }();
  return rules;
}

bool is_base_rule(Rule r) { return static_cast<int>(r) < kBaseRuleCount; }

Packs Packs::parse(std::string_view text) {
  Packs p;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token == "base") {
    } else if (token == "lp" || token == "notR") {
      p.not_right = true;
    } else if (token == "k3" || token == "notL") {
      p.not_left = true;
    } else if (token == "cl" || token == "notLR") {
      p.not_left = p.not_right = true;
    } else if (token == "den") {
      p.den = true;
    } else {
      throw Error("unknown rule pack '" + token + "'");
    }
    token.clear();
  };
  for (char c : text) {
    if (c == '+' || c == ',' || c == ' ' || c == '|') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return p;
}

std::string Packs::to_string() const {
  std::string out;
  if (not_left && not_right) {
    out = "cl";
  } else if (not_right) {
    out = "lp";
  } else if (not_left) {
    out = "k3";
  }
  if (den) out += out.empty() ? "den" : "+den";
  return out.empty() ? "base" : out;
}

bool Packs::allows(Rule r) const {
  switch (r) {
    case Rule::NotL: return not_left;
    case Rule::NotR: return not_right;
    case Rule::DenL:
    case Rule::DenR: return den;
    case Rule::EqRefl: return !den;
    default: return true;
  }
}

ValueSet Packs::values() const {
  if (not_left && not_right) return kClassicalValues;
  if (not_right) return kLpValues;
  if (not_left) return kK3Values;
  return kFourValues;
}

const Sequent& Derivation::target() const {
  if (steps.empty()) throw Error("empty derivation has no target");
  return steps.back().conclusion;
}

std::string_view violation_name(Violation v) {
  switch (v) {
    case Violation::UnknownRule: return "unknown-rule";
    case Violation::PackDisabled: return "pack-disabled";
    case Violation::PremiseCount: return "premise-count";
    case Violation::ForwardReference: return "forward-reference";
    case Violation::PremiseMismatch: return "premise-mismatch";
    case Violation::ConclusionMismatch: return "conclusion-mismatch";
    case Violation::MissingInstantiation: return "missing-instantiation";
    case Violation::PrincipalShape: return "principal-shape";
    case Violation::LiteralRestriction: return "literal-restriction";
    case Violation::Eigenvariable: return "eigenvariable";
    case Violation::NotAHypothesis: return "not-a-hypothesis";
    case Violation::TargetMismatch: return "target-mismatch";
    case Violation::EmptyDerivation: return "empty-derivation";
    case Violation::SubsetViolation: return "subset-violation";
    case Violation::Malformed: return "malformed";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Step checking

namespace {

struct Failure {
  Violation code;
  std::string message;
};

// The rule-specific formulas of one sequent in a rule instance; everything
// else in the sequent is shared context.
struct Part {
  std::vector<Formula> left;
  std::vector<Formula> right;
};

struct Instance {
  Part conclusion;
  std::vector<Part> premises;
  // Eigenvariable condition: y must not be free in the context, nor in
  // `body` unless y is the bound variable.
  std::optional<std::string> eigen;
  std::string bound;
  std::optional<Formula> body;
};

Failure fail(Violation code, std::string message) { return {code, std::move(message)}; }

std::string show(const Formula& a) { return print_formula(a); }

std::string show(const FormulaSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + show(s[i]);
  return out + "}";
}

FormulaSet remove_items(const FormulaSet& set, const std::vector<Formula>& items) {
  return set_difference(set, make_set(items));
}

const Formula& need_principal(const Step& s) {
  if (!s.principal) throw fail(Violation::MissingInstantiation, "the rule needs principal=");
  return *s.principal;
}

const Term& need_term(const std::optional<Term>& t, const char* field) {
  if (!t) throw fail(Violation::MissingInstantiation, std::string("the rule needs ") + field + "=");
  return *t;
}

const std::string& need_var(const std::optional<std::string>& v, const char* field) {
  if (!v || v->empty())
    throw fail(Violation::MissingInstantiation, std::string("the rule needs ") + field + "=");
  return *v;
}

void expect_shape(bool ok, Rule r, const Formula& a) {
  if (!ok)
    throw fail(Violation::PrincipalShape,
               show(a) + " is not a principal formula for " + std::string(rule_name(r)));
}

bool is_negation_of(const Formula& a, Op inner) { return a.op() == Op::Not && a.sub().op() == inner; }

// t1 = t2 | ~(t1 = t2)
bool is_denotation_formula(const Formula& a) {
  if (a.op() != Op::Or) return false;
  const Formula& l = a.sub(0);
  const Formula& r = a.sub(1);
  return l.op() == Op::Eq && r.op() == Op::Not && r.sub() == l;
}

Instance instantiate(const Step& s) {
  using F = Formula;
  Instance in;
  const Rule r = s.rule;
  auto left = [&](const F& p) { in.conclusion.left.push_back(p); };
  auto right = [&](const F& p) { in.conclusion.right.push_back(p); };
  auto premise = [&](std::vector<F> l, std::vector<F> rr) { in.premises.push_back({std::move(l), std::move(rr)}); };

  switch (r) {
    case Rule::AndL: case Rule::AndR: case Rule::OrL: case Rule::OrR: case Rule::ImpL: case Rule::ImpR: {
      const F& p = need_principal(s);
      const Op want = (r == Rule::AndL || r == Rule::AndR) ? Op::And
                      : (r == Rule::OrL || r == Rule::OrR) ? Op::Or : Op::Implies;
      expect_shape(p.op() == want, r, p);
      const F &a1 = p.sub(0), &a2 = p.sub(1);
      switch (r) {
        case Rule::AndL: left(p); premise({a1, a2}, {}); break;
        case Rule::AndR: right(p); premise({}, {a1}); premise({}, {a2}); break;
        case Rule::OrL: left(p); premise({a1}, {}); premise({a2}, {}); break;
        case Rule::OrR: right(p); premise({}, {a1, a2}); break;
        case Rule::ImpL: left(p); premise({}, {a1}); premise({a2}, {}); break;
        default: right(p); premise({a1}, {a2}); break;
      }
      break;
    }
    case Rule::NotNotL: case Rule::NotNotR: {
      const F& p = need_principal(s);
      expect_shape(is_negation_of(p, Op::Not), r, p);
      const F& a = p.sub().sub();
      if (r == Rule::NotNotL) { left(p); premise({a}, {}); } else { right(p); premise({}, {a}); }
      break;
    }
    case Rule::NotAndL: case Rule::NotAndR: case Rule::NotOrL: case Rule::NotOrR:
    case Rule::NotImpL: case Rule::NotImpR: {
      const F& p = need_principal(s);
      const Op want = (r == Rule::NotAndL || r == Rule::NotAndR) ? Op::And
                      : (r == Rule::NotOrL || r == Rule::NotOrR) ? Op::Or : Op::Implies;
      expect_shape(is_negation_of(p, want), r, p);
      const F &a1 = p.sub().sub(0), &a2 = p.sub().sub(1);
      const F n1 = F::neg(a1), n2 = F::neg(a2);
      switch (r) {
        case Rule::NotAndL: left(p); premise({n1}, {}); premise({n2}, {}); break;
        case Rule::NotAndR: right(p); premise({}, {n1, n2}); break;
        case Rule::NotOrL: left(p); premise({n1, n2}, {}); break;
        case Rule::NotOrR: right(p); premise({}, {n1}); premise({}, {n2}); break;
        case Rule::NotImpL: left(p); premise({a1, n2}, {}); break;
        default: right(p); premise({}, {a1}); premise({}, {n2}); break;
      }
      break;
    }
    case Rule::ForallL: case Rule::ForallR: case Rule::ExistsL: case Rule::ExistsR:
    case Rule::NotForallL: case Rule::NotForallR: case Rule::NotExistsL: case Rule::NotExistsR: {
      const F& p = need_principal(s);
      const bool negated = r == Rule::NotForallL || r == Rule::NotForallR || r == Rule::NotExistsL ||
                           r == Rule::NotExistsR;
      const bool universal = r == Rule::ForallL || r == Rule::ForallR || r == Rule::NotForallL ||
                             r == Rule::NotForallR;
      const Op want = universal ? Op::Forall : Op::Exists;
      expect_shape(negated ? is_negation_of(p, want) : p.op() == want, r, p);
      const F& q = negated ? p.sub() : p;
      const bool on_left = r == Rule::ForallL || r == Rule::ExistsL || r == Rule::NotForallL ||
                           r == Rule::NotExistsL;
      const bool eigen = r == Rule::ForallR || r == Rule::ExistsL || r == Rule::NotForallL ||
                         r == Rule::NotExistsR;
      Term term = eigen ? Term::variable(need_var(s.y, "y")) : need_term(s.t, "t");
      F instance = substitute(q.body(), q.name(), term);
      if (negated) instance = F::neg(instance);
      if (eigen) {
        in.eigen = *s.y;
        in.bound = q.name();
        in.body = q.body();
      }
      if (on_left) { left(p); premise({instance}, {}); } else { right(p); premise({}, {instance}); }
      break;
    }
    case Rule::EqRefl: {
      const Term& t = need_term(s.t, "t");
      premise({F::eq(t, t)}, {});
      break;
    }
    case Rule::EqRepl: {
      if (!s.side) throw fail(Violation::MissingInstantiation, "=-Repl needs side=");
      const F& a = *s.side;
      if (!a.is_literal())
        throw fail(Violation::LiteralRestriction, show(a) + " is not a literal");
      const std::string& x = need_var(s.x, "x");
      const Term& t1 = need_term(s.t, "t");
      const Term& t2 = need_term(s.t2, "t2");
      left(F::eq(t1, t2));
      left(substitute(a, x, t2));
      premise({substitute(a, x, t1)}, {});
      break;
    }
    case Rule::NotL: case Rule::NotR: {
      const F& p = need_principal(s);
      expect_shape(p.op() == Op::Not, r, p);
      if (r == Rule::NotL) { left(p); premise({}, {p.sub()}); } else { right(p); premise({p.sub()}, {}); }
      break;
    }
    case Rule::DenL: case Rule::DenR: {
      const F& p = need_principal(s);
      expect_shape(is_denotation_formula(p), r, p);
      const Term& t1 = p.sub(0).terms()[0];
      const Term& t2 = p.sub(0).terms()[1];
      const F e1 = F::eq(t1, t1), e2 = F::eq(t2, t2);
      if (r == Rule::DenL) { left(p); premise({e1, e2}, {}); } else { right(p); premise({}, {e1}); premise({}, {e2}); }
      break;
    }
    default:
      break;
  }
  return in;
}

void check_axiom(const Step& s) {
  const Sequent& c = s.conclusion;
  switch (s.rule) {
    case Rule::Id: {
      const Formula& a = need_principal(s);
      if (!a.is_literal()) throw fail(Violation::LiteralRestriction, show(a) + " is not a literal");
      if (!set_contains(c.antecedent, a) || !set_contains(c.succedent, a))
        throw fail(Violation::ConclusionMismatch, show(a) + " must occur on both sides");
      return;
    }
    case Rule::FalsityL:
      if (s.principal && *s.principal != Formula::falsity())
        throw fail(Violation::PrincipalShape, "F-L has principal F");
      if (!set_contains(c.antecedent, Formula::falsity()))
        throw fail(Violation::ConclusionMismatch, "F must occur in the antecedent");
      return;
    case Rule::NotFalsityR:
      if (s.principal && *s.principal != Formula::truth())
        throw fail(Violation::PrincipalShape, "~F-R has principal ~F");
      if (!set_contains(c.succedent, Formula::truth()))
        throw fail(Violation::ConclusionMismatch, "~F must occur in the succedent");
      return;
    default:
      return;
  }
}

void check_cut(const Step& s, const Sequent& p1, const Sequent& p2) {
  const Formula& a = need_principal(s);
  const Sequent& c = s.conclusion;
  if (!set_contains(p1.succedent, a))
    throw fail(Violation::PremiseMismatch, "the first premise must have " + show(a) + " on the right");
  if (!set_contains(p2.antecedent, a))
    throw fail(Violation::PremiseMismatch, "the second premise must have " + show(a) + " on the left");
  const FormulaSet one = make_set({a});
  // Gamma', Gamma |- Delta, Delta' where Gamma' may or may not keep A, and
  // likewise Delta.
  const FormulaSet ante_min = set_union(p1.antecedent, set_difference(p2.antecedent, one));
  const FormulaSet ante_max = set_union(p1.antecedent, p2.antecedent);
  const FormulaSet succ_min = set_union(set_difference(p1.succedent, one), p2.succedent);
  const FormulaSet succ_max = set_union(p1.succedent, p2.succedent);
  if (c.antecedent != ante_min && c.antecedent != ante_max)
    throw fail(Violation::ConclusionMismatch, "antecedent should be " + show(ante_min));
  if (c.succedent != succ_min && c.succedent != succ_max)
    throw fail(Violation::ConclusionMismatch, "succedent should be " + show(succ_min));
}

void check_instance(const Instance& in, const Sequent& c, std::span<const Sequent* const> premises) {
  // Smallest shared context; the instance exists iff it fits every sequent.
  FormulaSet gamma = remove_items(c.antecedent, in.conclusion.left);
  FormulaSet delta = remove_items(c.succedent, in.conclusion.right);
  for (std::size_t i = 0; i < premises.size(); ++i) {
    gamma = set_union(gamma, remove_items(premises[i]->antecedent, in.premises[i].left));
    delta = set_union(delta, remove_items(premises[i]->succedent, in.premises[i].right));
  }
  auto fits = [&](const Sequent& s, const Part& part) -> std::string {
    for (const Formula& a : part.left)
      if (!set_contains(s.antecedent, a)) return show(a) + " missing on the left";
    for (const Formula& a : part.right)
      if (!set_contains(s.succedent, a)) return show(a) + " missing on the right";
    if (!set_subset(gamma, s.antecedent))
      return "antecedent lacks " + show(set_difference(gamma, s.antecedent));
    if (!set_subset(delta, s.succedent))
      return "succedent lacks " + show(set_difference(delta, s.succedent));
    return {};
  };
  for (std::size_t i = 0; i < premises.size(); ++i)
    if (auto why = fits(*premises[i], in.premises[i]); !why.empty())
      throw fail(Violation::PremiseMismatch, "premise " + std::to_string(i + 1) + ": " + why);
  if (auto why = fits(c, in.conclusion); !why.empty()) throw fail(Violation::ConclusionMismatch, why);

  if (in.eigen) {
    const std::string& y = *in.eigen;
    for (const FormulaSet* side : {&gamma, &delta})
      for (const Formula& a : *side)
        if (occurs_free(y, a))
          throw fail(Violation::Eigenvariable, y + " is free in the context formula " + show(a));
    if (y != in.bound && occurs_free(y, *in.body))
      throw fail(Violation::Eigenvariable, y + " is free in " + show(*in.body));
  }
}

int expected_premises(Rule r) {
  switch (r) {
    case Rule::Id: case Rule::FalsityL: case Rule::NotFalsityR: case Rule::Hypothesis: return 0;
    case Rule::Cut: case Rule::AndR: case Rule::OrL: case Rule::ImpL: case Rule::NotAndL:
    case Rule::NotOrR: case Rule::NotImpR: case Rule::DenR: return 2;
    default: return 1;
  }
}

CheckResult to_result(int index, const Failure& f) { return {false, index, f.code, f.message}; }

}  // namespace

CheckResult check_step(const Step& step, int index, std::span<const Step> earlier,
                       const Packs& packs, std::span<const Sequent> hypotheses) {
  try {
    if (static_cast<int>(step.rule) > static_cast<int>(Rule::Hypothesis))
      throw fail(Violation::UnknownRule, "unknown rule");
    if (step.rule != Rule::Hypothesis && !packs.allows(step.rule))
      throw fail(Violation::PackDisabled,
                 std::string(rule_name(step.rule)) + " is not available with packs " + packs.to_string());
    if (static_cast<int>(step.premises.size()) != expected_premises(step.rule))
      throw fail(Violation::PremiseCount, std::string(rule_name(step.rule)) + " takes " +
                                              std::to_string(expected_premises(step.rule)) + " premises");
    std::vector<const Sequent*> premises;
    for (int p : step.premises) {
      if (p < 0 || p >= index || p >= static_cast<int>(earlier.size()))
        throw fail(Violation::ForwardReference,
                   "premise " + std::to_string(p + 1) + " does not precede step " + std::to_string(index + 1));
      premises.push_back(&earlier[p].conclusion);
    }
    switch (step.rule) {
      case Rule::Hypothesis:
        if (std::find(hypotheses.begin(), hypotheses.end(), step.conclusion) == hypotheses.end())
          throw fail(Violation::NotAHypothesis, print_sequent(step.conclusion) + " is not a hypothesis");
        break;
      case Rule::Id:
      case Rule::FalsityL:
      case Rule::NotFalsityR:
        check_axiom(step);
        break;
      case Rule::Cut:
        check_cut(step, *premises[0], *premises[1]);
        break;
      default:
        check_instance(instantiate(step), step.conclusion, premises);
        break;
    }
  } catch (const Failure& f) {
    return to_result(index, f);
  }
  return CheckResult::success();
}

CheckResult check_derivation(const Derivation& d) { return check_derivation(d, d.packs); }

CheckResult check_derivation(const Derivation& d, const Packs& packs) {
  if (d.steps.empty()) return {false, -1, Violation::EmptyDerivation, "the derivation has no steps"};
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    CheckResult r = check_step(d.steps[i], static_cast<int>(i), d.steps, packs, d.hypotheses);
    if (!r) return r;
  }
  return CheckResult::success();
}

CheckResult derives_check(std::span<const Formula> gamma, std::span<const Formula> delta,
                          const Derivation& proof) {
  if (proof.steps.empty()) return {false, -1, Violation::EmptyDerivation, "the derivation has no steps"};
  if (!proof.is_proof())
    return {false, -1, Violation::NotAHypothesis, "a proof may not use hypotheses"};
  CheckResult r = check_derivation(proof);
  if (!r) return r;
  const Sequent& t = proof.target();
  FormulaSet g = make_set({gamma.begin(), gamma.end()});
  FormulaSet d = make_set({delta.begin(), delta.end()});
  if (!set_subset(t.antecedent, g) || !set_subset(t.succedent, d))
    return {false, static_cast<int>(proof.steps.size()) - 1, Violation::SubsetViolation,
            print_sequent(t) + " is not within the given sets"};
  return CheckResult::success();
}

bool derives(std::span<const Formula> gamma, std::span<const Formula> delta,
             const Derivation& proof) {
  return static_cast<bool>(derives_check(gamma, delta, proof));
}

// ---------------------------------------------------------------------------
// Equality axioms

namespace {

Formula congruence(int arity, const std::function<Formula(const std::vector<Term>&,
                                                          const std::vector<Term>&)>& make) {
  std::vector<Term> xs, ys;
  for (int i = 1; i <= arity; ++i) {
    xs.push_back(Term::variable("x" + std::to_string(i)));
    ys.push_back(Term::variable("y" + std::to_string(i)));
  }
  Formula body = make(xs, ys);
  for (int i = arity; i >= 1; --i) {
    body = Formula::forall("y" + std::to_string(i), body);
    body = Formula::forall("x" + std::to_string(i), body);
  }
  return body;
}

Formula equalities(const std::vector<Term>& xs, const std::vector<Term>& ys) {
  Formula out = Formula::eq(xs[0], ys[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) out = Formula::conj(out, Formula::eq(xs[i], ys[i]));
  return out;
}

}  // namespace

std::vector<Formula> equality_axioms(const Signature& sig, const EqualityAxiomOptions& options) {
  std::vector<Formula> out;
  Term x = Term::variable("x");
  out.push_back(Formula::forall("x", Formula::eq(x, x)));
  for (const auto& [name, arity] : sig.functions()) {
    if (arity == 0) {
      Term c = Term::function(name);
      out.push_back(Formula::eq(c, c));
      continue;
    }
    out.push_back(congruence(arity, [&](const auto& xs, const auto& ys) {
      return Formula::implies(equalities(xs, ys),
                              Formula::eq(Term::function(name, xs), Term::function(name, ys)));
    }));
  }
  for (const auto& [name, arity] : sig.predicates()) {
    if (arity == 0) {
      out.push_back(Formula::implies(Formula::prop(name), Formula::prop(name)));
      continue;
    }
    out.push_back(congruence(arity, [&](const auto& xs, const auto& ys) {
      return Formula::implies(Formula::conj(equalities(xs, ys), Formula::pred(name, xs)),
                              Formula::pred(name, ys));
    }));
  }
  if (options.equality_congruence) {
    out.push_back(congruence(2, [](const auto& xs, const auto& ys) {
      return Formula::implies(Formula::conj(equalities(xs, ys), Formula::eq(xs[0], xs[1])),
                              Formula::eq(ys[0], ys[1]));
    }));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Files

DerivationFormatError::DerivationFormatError(int line, Violation code, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line), code_(code) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Sequent parse_file_sequent(std::string_view text, Signature& sig) {
  text = trim(text);
  if (text.substr(0, 2) == "|-") text.remove_prefix(2);
  if (text.find("=>") == std::string_view::npos) throw Error("sequent needs '=>'");
  return parse_sequent_infer(text, sig);
}

std::string print_file_sequent(const Sequent& s) {
  std::string out = print_formula_list(s.antecedent, "; ");
  out += out.empty() ? "=>" : " =>";
  if (!s.succedent.empty()) out += " " + print_formula_list(s.succedent, "; ");
  return out;
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  struct Pending {
    std::string fields;
    int line;
  };
  std::vector<Pending> pending;
  std::vector<std::string> hypothesis_text;

  auto error = [&](const std::string& msg, Violation code = Violation::Malformed) {
    return DerivationFormatError(line_no, code, msg);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    try {
      if (line.starts_with("packs:")) {
        d.packs = Packs::parse(trim(line.substr(6)));
      } else if (line.starts_with("sig:")) {
        d.signature.merge(Signature::parse(trim(line.substr(4))));
      } else if (line.starts_with("hypothesis:")) {
        d.hypotheses.push_back(parse_file_sequent(line.substr(11), d.signature));
      } else {
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw error("expected '<n>: <rule> ...'");
        int idx = 0;
        auto num = trim(line.substr(0, colon));
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), idx);
        if (ec != std::errc() || ptr != num.data() + num.size())
          throw error("bad step number '" + std::string(num) + "'");
        if (idx != static_cast<int>(d.steps.size()) + 1)
          throw error("step numbers must run 1, 2, ...; got " + std::to_string(idx));
        std::string_view rest = trim(line.substr(colon + 1));
        std::size_t name_end = rest.find_first_of(" \t");
        if (name_end == std::string_view::npos) throw error("missing sequent");
        std::string_view name = rest.substr(0, name_end);
        auto rule = rule_from_name(name);
        if (!rule) throw error("unknown rule '" + std::string(name) + "'", Violation::UnknownRule);
        // Searching after the name: "|-L" itself starts with "|-".
        auto turnstile = rest.find("|-", name_end);
        if (turnstile == std::string_view::npos) throw error("missing '|-' before the sequent");
        Step step;
        step.rule = *rule;
        step.conclusion = parse_file_sequent(rest.substr(turnstile), d.signature);
        d.steps.push_back(step);
        pending.push_back({std::string(rest.substr(name_end, turnstile - name_end)), line_no});
      }
    } catch (const DerivationFormatError&) {
      throw;
    } catch (const Error& e) {
      throw error(e.what());
    }
  }

  // Fields are read after all sequents so terms see every declared symbol.
  for (std::size_t i = 0; i < pending.size(); ++i) {
    line_no = pending[i].line;
    Step& step = d.steps[i];
    std::string_view f = pending[i].fields;
    try {
      std::size_t pos = 0;
      while (true) {
        while (pos < f.size() && (f[pos] == ' ' || f[pos] == '\t')) ++pos;
        if (pos >= f.size()) break;
        auto eq = f.find('=', pos);
        if (eq == std::string_view::npos) throw error("expected key=value");
        std::string key(f.substr(pos, eq - pos));
        std::string value;
        pos = eq + 1;
        if (key == "premises") {
          if (pos >= f.size() || f[pos] != '[') throw error("premises=[...] expected");
          auto close = f.find(']', pos);
          if (close == std::string_view::npos) throw error("unterminated premise list");
          std::string_view list = f.substr(pos + 1, close - pos - 1);
          pos = close + 1;
          std::size_t k = 0;
          while (k < list.size()) {
            auto comma = list.find(',', k);
            auto item = trim(list.substr(k, comma == std::string_view::npos ? list.size() - k : comma - k));
            if (!item.empty()) {
              int n = 0;
              auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
              if (ec != std::errc() || p != item.data() + item.size())
                throw error("bad premise number '" + std::string(item) + "'");
              step.premises.push_back(n - 1);
            }
            if (comma == std::string_view::npos) break;
            k = comma + 1;
          }
          continue;
        }
        if (pos >= f.size() || f[pos] != '"') throw error("value of " + key + " must be quoted");
        auto close = f.find('"', pos + 1);
        if (close == std::string_view::npos) throw error("unterminated string");
        value = std::string(f.substr(pos + 1, close - pos - 1));
        pos = close + 1;
        if (key == "principal") {
          step.principal = parse_formula_infer(value, d.signature);
        } else if (key == "side") {
          step.side = parse_formula_infer(value, d.signature);
        } else if (key == "t") {
          step.t = parse_term(value, d.signature);
        } else if (key == "t2") {
          step.t2 = parse_term(value, d.signature);
        } else if (key == "x") {
          step.x = value;
        } else if (key == "y") {
          step.y = value;
        } else {
          throw error("unknown field '" + key + "'");
        }
      }
    } catch (const DerivationFormatError&) {
      throw;
    } catch (const Error& e) {
      throw error(e.what());
    }
  }
  return d;
}

std::string print_derivation(const Derivation& d) {
  std::ostringstream out;
  out << "packs: " << d.packs.to_string() << "\n";
  Signature sig = d.signature;
  std::vector<Formula> all;
  auto collect = [&](const Sequent& s) {
    all.insert(all.end(), s.antecedent.begin(), s.antecedent.end());
    all.insert(all.end(), s.succedent.begin(), s.succedent.end());
  };
  for (const auto& h : d.hypotheses) collect(h);
  for (const auto& s : d.steps) {
    collect(s.conclusion);
    if (s.principal) all.push_back(*s.principal);
    if (s.side) all.push_back(*s.side);
    for (const auto* t : {&s.t, &s.t2})
      if (*t) all.push_back(Formula::eq(**t, **t));
  }
  sig.merge(Signature::of(all));
  std::istringstream sig_lines(sig.to_string());
  for (std::string line; std::getline(sig_lines, line);)
    if (!trim(line).empty()) out << "sig: " << line << "\n";
  for (const auto& h : d.hypotheses) out << "hypothesis: " << print_file_sequent(h) << "\n";
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& s = d.steps[i];
    out << i + 1 << ": " << rule_name(s.rule);
    if (!s.premises.empty()) {
      out << " premises=[";
      for (std::size_t k = 0; k < s.premises.size(); ++k) out << (k ? "," : "") << s.premises[k] + 1;
      out << "]";
    }
    if (s.principal) out << " principal=\"" << print_formula(*s.principal) << "\"";
    if (s.side) out << " side=\"" << print_formula(*s.side) << "\"";
    if (s.t) out << " t=\"" << print_term(*s.t) << "\"";
    if (s.t2) out << " t2=\"" << print_term(*s.t2) << "\"";
    if (s.x) out << " x=\"" << *s.x << "\"";
    if (s.y) out << " y=\"" << *s.y << "\"";
    out << " |- " << print_file_sequent(s.conclusion) << "\n";
  }
  return out.str();
}

}  // namespace bd4
