#include "bd4/rule_instances.hpp"

#include <algorithm>

namespace bd4 {

namespace {

class Generator {
 public:
  Generator(Rule rule, Rng& rng, const InstanceOptions& options)
      : fo_(is_first_order_rule(rule)), rng_(rng), options_(options) {
    if (rule == Rule::EqRefl || rule == Rule::EqRepl || rule == Rule::DenL || rule == Rule::DenR)
      options_.fo.equality = true;
  }

  Formula formula() {
    return fo_ ? random_fo_formula(rng_, options_.fo) : random_prop_formula(rng_, options_.prop);
  }

  std::vector<Formula> context() {
    std::vector<Formula> out;
    int k = uniform(rng_, 0, options_.max_context);
    for (int i = 0; i < k; ++i) out.push_back(formula());
    return out;
  }

  Formula literal() {
    Formula a = fo_ ? atomic_fo() : atomic_prop();
    return uniform(rng_, 0, 1) ? Formula::neg(a) : a;
  }

  Formula atomic_fo() {
    FoGenOptions atoms = options_.fo;
    atoms.max_depth = 0;
    return random_fo_formula(rng_, atoms);
  }

  Formula atomic_prop() {
    const auto& names = options_.prop.atoms;
    return Formula::prop(names[uniform(rng_, 0, static_cast<int>(names.size()) - 1)]);
  }

  Term term() {
    const auto& vars = options_.fo.variables;
    const auto& consts = options_.fo.constants;
    int k = uniform(rng_, 0, static_cast<int>(vars.size() + consts.size()) - 1);
    if (k < static_cast<int>(vars.size())) return Term::variable(vars[k]);
    return Term::function(consts[k - vars.size()]);
  }

  std::string variable() {
    const auto& vars = options_.fo.variables;
    return vars[uniform(rng_, 0, static_cast<int>(vars.size()) - 1)];
  }

  // A variable satisfying the eigenvariable condition for body A bound by x.
  std::string eigenvariable(const std::string& x, const Formula& a, const std::vector<Formula>& gamma,
                            const std::vector<Formula>& delta) {
    VarSet avoid = free_vars(gamma);
    for (const auto& v : free_vars(delta)) avoid.insert(v);
    std::vector<std::string> candidates = options_.fo.variables;
    candidates.push_back("z");
    std::shuffle(candidates.begin(), candidates.end(), rng_);
    for (const auto& y : candidates)
      if (!avoid.count(y) && (y == x || !occurs_free(y, a))) return y;
    for (const auto& v : free_vars(a)) avoid.insert(v);
    avoid.insert(x);
    return fresh_variable("z", avoid);
  }

  Rng& rng() { return rng_; }

 private:
  bool fo_;
  Rng& rng_;
  InstanceOptions options_;
};

std::vector<Formula> plus(std::vector<Formula> base, std::initializer_list<Formula> extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

}  // namespace

bool is_first_order_rule(Rule r) {
  switch (r) {
    case Rule::ForallL: case Rule::ForallR: case Rule::ExistsL: case Rule::ExistsR:
    case Rule::NotForallL: case Rule::NotForallR: case Rule::NotExistsL: case Rule::NotExistsR:
    case Rule::EqRefl: case Rule::EqRepl: case Rule::DenL: case Rule::DenR:
      return true;
    default:
      return false;
  }
}

RuleInstance random_rule_instance(Rule r, Rng& rng, const InstanceOptions& options) {
  if (r == Rule::Hypothesis) throw Error("hyp is not a rule schema");
  Generator g(r, rng, options);
  std::vector<Formula> gamma = g.context();
  std::vector<Formula> delta = g.context();
  RuleInstance out;
  Step& step = out.step;
  step.rule = r;
  auto premise = [&](std::vector<Formula> l, std::vector<Formula> rr) {
    out.premises.emplace_back(std::move(l), std::move(rr));
  };
  auto conclude = [&](std::vector<Formula> l, std::vector<Formula> rr) {
    step.conclusion = Sequent(std::move(l), std::move(rr));
  };
  auto binary = [&](Op op) {
    Formula a = g.formula(), b = g.formula();
    switch (op) {
      case Op::And: return Formula::conj(a, b);
      case Op::Or: return Formula::disj(a, b);
      default: return Formula::implies(a, b);
    }
  };
  auto neg = [](const Formula& a) { return Formula::neg(a); };

  switch (r) {
    case Rule::Id: {
      Formula a = g.literal();
      step.principal = a;
      conclude(plus(gamma, {a}), plus(delta, {a}));
      break;
    }
    case Rule::Cut: {
      Formula a = g.formula();
      std::vector<Formula> gamma2 = g.context(), delta2 = g.context();
      step.principal = a;
      premise(gamma, plus(delta, {a}));
      premise(plus(gamma2, {a}), delta2);
      std::vector<Formula> l = gamma, rr = delta;
      l.insert(l.end(), gamma2.begin(), gamma2.end());
      rr.insert(rr.end(), delta2.begin(), delta2.end());
      conclude(l, rr);
      break;
    }
    case Rule::FalsityL:
      conclude(plus(gamma, {Formula::falsity()}), delta);
      break;
    case Rule::NotFalsityR:
      conclude(gamma, plus(delta, {Formula::truth()}));
      break;
    case Rule::AndL: {
      Formula c = binary(Op::And);
      premise(plus(gamma, {c.sub(0), c.sub(1)}), delta);
      conclude(plus(gamma, {c}), delta);
      step.principal = c;
      break;
    }
    case Rule::AndR: {
      Formula c = binary(Op::And);
      premise(gamma, plus(delta, {c.sub(0)}));
      premise(gamma, plus(delta, {c.sub(1)}));
      conclude(gamma, plus(delta, {c}));
      step.principal = c;
      break;
    }
    case Rule::OrL: {
      Formula c = binary(Op::Or);
      premise(plus(gamma, {c.sub(0)}), delta);
      premise(plus(gamma, {c.sub(1)}), delta);
      conclude(plus(gamma, {c}), delta);
      step.principal = c;
      break;
    }
    case Rule::OrR: {
      Formula c = binary(Op::Or);
      premise(gamma, plus(delta, {c.sub(0), c.sub(1)}));
      conclude(gamma, plus(delta, {c}));
      step.principal = c;
      break;
    }
    case Rule::ImpL: {
      Formula c = binary(Op::Implies);
      premise(gamma, plus(delta, {c.sub(0)}));
      premise(plus(gamma, {c.sub(1)}), delta);
      conclude(plus(gamma, {c}), delta);
      step.principal = c;
      break;
    }
    case Rule::ImpR: {
      Formula c = binary(Op::Implies);
      premise(plus(gamma, {c.sub(0)}), plus(delta, {c.sub(1)}));
      conclude(gamma, plus(delta, {c}));
      step.principal = c;
      break;
    }
    case Rule::NotNotL: {
      Formula a = g.formula();
      premise(plus(gamma, {a}), delta);
      conclude(plus(gamma, {neg(neg(a))}), delta);
      step.principal = neg(neg(a));
      break;
    }
    case Rule::NotNotR: {
      Formula a = g.formula();
      premise(gamma, plus(delta, {a}));
      conclude(gamma, plus(delta, {neg(neg(a))}));
      step.principal = neg(neg(a));
      break;
    }
    case Rule::NotAndL: {
      Formula c = binary(Op::And);
      premise(plus(gamma, {neg(c.sub(0))}), delta);
      premise(plus(gamma, {neg(c.sub(1))}), delta);
      conclude(plus(gamma, {neg(c)}), delta);
      step.principal = neg(c);
      break;
    }
    case Rule::NotAndR: {
      Formula c = binary(Op::And);
      premise(gamma, plus(delta, {neg(c.sub(0)), neg(c.sub(1))}));
      conclude(gamma, plus(delta, {neg(c)}));
      step.principal = neg(c);
      break;
    }
    case Rule::NotOrL: {
      Formula c = binary(Op::Or);
      premise(plus(gamma, {neg(c.sub(0)), neg(c.sub(1))}), delta);
      conclude(plus(gamma, {neg(c)}), delta);
      step.principal = neg(c);
      break;
    }
    case Rule::NotOrR: {
      Formula c = binary(Op::Or);
      premise(gamma, plus(delta, {neg(c.sub(0))}));
      premise(gamma, plus(delta, {neg(c.sub(1))}));
      conclude(gamma, plus(delta, {neg(c)}));
      step.principal = neg(c);
      break;
    }
    case Rule::NotImpL: {
      Formula c = binary(Op::Implies);
      premise(plus(gamma, {c.sub(0), neg(c.sub(1))}), delta);
      conclude(plus(gamma, {neg(c)}), delta);
      step.principal = neg(c);
      break;
    }
    case Rule::NotImpR: {
      Formula c = binary(Op::Implies);
      premise(gamma, plus(delta, {c.sub(0)}));
      premise(gamma, plus(delta, {neg(c.sub(1))}));
      conclude(gamma, plus(delta, {neg(c)}));
      step.principal = neg(c);
      break;
    }
    case Rule::ForallL:
    case Rule::ExistsR:
    case Rule::NotForallR:
    case Rule::NotExistsL: {
      std::string x = g.variable();
      Formula body = g.formula();
      Term t = g.term();
      Formula inst = substitute(body, x, t);
      bool universal = r == Rule::ForallL || r == Rule::NotForallR;
      Formula q = universal ? Formula::forall(x, body) : Formula::exists(x, body);
      bool negated = r == Rule::NotForallR || r == Rule::NotExistsL;
      if (negated) {
        q = neg(q);
        inst = neg(inst);
      }
      bool left = r == Rule::ForallL || r == Rule::NotExistsL;
      if (left) {
        premise(plus(gamma, {inst}), delta);
        conclude(plus(gamma, {q}), delta);
      } else {
        premise(gamma, plus(delta, {inst}));
        conclude(gamma, plus(delta, {q}));
      }
      step.principal = q;
      step.t = t;
      break;
    }
    case Rule::ForallR:
    case Rule::ExistsL:
    case Rule::NotForallL:
    case Rule::NotExistsR: {
      std::string x = g.variable();
      Formula body = g.formula();
      std::string y = g.eigenvariable(x, body, gamma, delta);
      Formula inst = substitute(body, x, Term::variable(y));
      bool universal = r == Rule::ForallR || r == Rule::NotForallL;
      Formula q = universal ? Formula::forall(x, body) : Formula::exists(x, body);
      bool negated = r == Rule::NotForallL || r == Rule::NotExistsR;
      if (negated) {
        q = neg(q);
        inst = neg(inst);
      }
      bool left = r == Rule::ExistsL || r == Rule::NotForallL;
      if (left) {
        premise(plus(gamma, {inst}), delta);
        conclude(plus(gamma, {q}), delta);
      } else {
        premise(gamma, plus(delta, {inst}));
        conclude(gamma, plus(delta, {q}));
      }
      step.principal = q;
      step.y = y;
      break;
    }
    case Rule::EqRefl: {
      Term t = g.term();
      premise(plus(gamma, {Formula::eq(t, t)}), delta);
      conclude(gamma, delta);
      step.t = t;
      break;
    }
    case Rule::EqRepl: {
      // A literal in which x occurs, instantiated at both terms.
      std::string x = g.variable();
      Formula a = g.literal();
      while (!occurs_free(x, a)) a = g.literal();
      Term t1 = g.term(), t2 = g.term();
      premise(plus(gamma, {substitute(a, x, t1)}), delta);
      conclude(plus(gamma, {Formula::eq(t1, t2), substitute(a, x, t2)}), delta);
      step.side = a;
      step.x = x;
      step.t = t1;
      step.t2 = t2;
      break;
    }
    case Rule::DenL:
    case Rule::DenR: {
      Term t1 = g.term(), t2 = g.term();
      Formula d = Formula::disj(Formula::eq(t1, t2), Formula::neq(t1, t2));
      if (r == Rule::DenL) {
        premise(plus(gamma, {Formula::eq(t1, t1), Formula::eq(t2, t2)}), delta);
        conclude(plus(gamma, {d}), delta);
      } else {
        premise(gamma, plus(delta, {Formula::eq(t1, t1)}));
        premise(gamma, plus(delta, {Formula::eq(t2, t2)}));
        conclude(gamma, plus(delta, {d}));
      }
      step.principal = d;
      break;
    }
    case Rule::NotL: {
      Formula a = g.formula();
      premise(gamma, plus(delta, {a}));
      conclude(plus(gamma, {neg(a)}), delta);
      step.principal = neg(a);
      break;
    }
    case Rule::NotR: {
      Formula a = g.formula();
      premise(plus(gamma, {a}), delta);
      conclude(gamma, plus(delta, {neg(a)}));
      step.principal = neg(a);
      break;
    }
    case Rule::Hypothesis:
      break;
  }

  std::vector<Step> earlier;
  for (const auto& p : out.premises) {
    Step h;
    h.rule = Rule::Hypothesis;
    h.conclusion = p;
    step.premises.push_back(static_cast<int>(earlier.size()));
    earlier.push_back(std::move(h));
  }
  Packs packs{true, true, r == Rule::DenL || r == Rule::DenR};
  CheckResult check = check_step(step, static_cast<int>(earlier.size()), earlier, packs, out.premises);
  if (!check)
    throw std::logic_error("generated " + std::string(rule_name(r)) + " instance rejected: " + check.message);
  return out;
}

}  // namespace bd4
