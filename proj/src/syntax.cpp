#include "bd4/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bd4 {

namespace {

constexpr std::array<std::string_view, 7> kConnectiveNames = {
    "Des", "Norm", "Cons", "Det", "Confl", "Both", "Neither"};

}  // namespace

int connective_arity(Connective c) {
  return (c == Connective::Both || c == Connective::Neither) ? 0 : 1;
}

std::string_view connective_name(Connective c) {
  return kConnectiveNames[static_cast<int>(c)];
}

std::optional<Connective> connective_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kConnectiveNames.size(); ++i)
    if (kConnectiveNames[i] == name) return static_cast<Connective>(i);
  return std::nullopt;
}

bool is_reserved_word(std::string_view word) {
  return word == "F" || word == "T" || word == "forall" || word == "exists" ||
         connective_from_name(word).has_value();
}

// ---------------------------------------------------------------------------
// Terms

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> args;
};

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), {}}));
}

Term Term::function(std::string name, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(Node{Kind::Function, std::move(name), std::move(args)}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::span<const Term> Term::args() const { return node_->args; }

int compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  auto xs = a.args(), ys = b.args();
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// Formulas

struct Formula::Node {
  Op op;
  Connective conn = Connective::Des;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> subs;
  int count = 0;
  int depth = 0;
  bool propositional = true;
};

struct FormulaBuilder {
  static std::shared_ptr<Formula::Node> node(Op op) {
    auto n = std::make_shared<Formula::Node>();
    n->op = op;
    return n;
  }
  static Formula wrap(std::shared_ptr<Formula::Node> n) { return Formula(std::move(n)); }

  static Formula binary(Op op, Formula a, Formula b) {
    auto n = node(op);
    n->count = a.connective_count() + b.connective_count() + 1;
    n->depth = std::max(a.depth(), b.depth()) + 1;
    n->propositional = a.is_propositional() && b.is_propositional();
    n->subs = {std::move(a), std::move(b)};
    return wrap(std::move(n));
  }

  static Formula quantifier(Op op, std::string var, Formula body) {
    auto n = node(op);
    n->name = std::move(var);
    n->count = body.connective_count() + 1;
    n->depth = body.depth() + 1;
    n->propositional = false;
    n->subs = {std::move(body)};
    return wrap(std::move(n));
  }
};

Formula Formula::falsity() {
  static const Formula kFalse = [] {
    auto n = FormulaBuilder::node(Op::False);
    n->count = 1;
    return Formula(std::move(n));
  }();
  return kFalse;
}

Formula Formula::truth() { return neg(falsity()); }

Formula Formula::prop(std::string name) {
  auto n = FormulaBuilder::node(Op::Prop);
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::pred(std::string name, std::vector<Term> args) {
  if (args.empty()) return prop(std::move(name));
  auto n = FormulaBuilder::node(Op::Pred);
  n->name = std::move(name);
  n->terms = std::move(args);
  n->propositional = false;
  return Formula(std::move(n));
}

Formula Formula::eq(Term lhs, Term rhs) {
  auto n = FormulaBuilder::node(Op::Eq);
  n->terms = {std::move(lhs), std::move(rhs)};
  n->propositional = false;
  return Formula(std::move(n));
}

Formula Formula::neq(Term lhs, Term rhs) { return neg(eq(std::move(lhs), std::move(rhs))); }

Formula Formula::conn(Connective c, std::vector<Formula> args) {
  if (static_cast<int>(args.size()) != connective_arity(c))
    throw Error("connective " + std::string(connective_name(c)) + " expects " +
                std::to_string(connective_arity(c)) + " argument(s)");
  auto n = FormulaBuilder::node(Op::Conn);
  n->conn = c;
  int depth = 0, count = 1;
  bool prop = true;
  for (const auto& s : args) {
    depth = std::max(depth, s.depth() + 1);
    count += s.connective_count();
    prop = prop && s.is_propositional();
  }
  n->subs = std::move(args);
  n->depth = depth;
  n->count = count;
  n->propositional = prop;
  return Formula(std::move(n));
}

Formula Formula::neg(Formula a) {
  auto n = FormulaBuilder::node(Op::Not);
  n->count = a.connective_count() + 1;
  n->depth = a.depth() + 1;
  n->propositional = a.is_propositional();
  n->subs = {std::move(a)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  return FormulaBuilder::binary(Op::And, std::move(a), std::move(b));
}
Formula Formula::disj(Formula a, Formula b) {
  return FormulaBuilder::binary(Op::Or, std::move(a), std::move(b));
}
Formula Formula::implies(Formula a, Formula b) {
  return FormulaBuilder::binary(Op::Implies, std::move(a), std::move(b));
}
Formula Formula::forall(std::string var, Formula body) {
  return FormulaBuilder::quantifier(Op::Forall, std::move(var), std::move(body));
}
Formula Formula::exists(std::string var, Formula body) {
  return FormulaBuilder::quantifier(Op::Exists, std::move(var), std::move(body));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
Connective Formula::connective() const { return node_->conn; }
std::span<const Term> Formula::terms() const { return node_->terms; }
std::span<const Formula> Formula::subs() const { return node_->subs; }
int Formula::connective_count() const { return node_->count; }
int Formula::depth() const { return node_->depth; }
bool Formula::is_propositional() const { return node_->propositional; }

bool Formula::is_atomic() const {
  switch (op()) {
    case Op::False: case Op::Prop: case Op::Pred: case Op::Eq: return true;
    case Op::Conn: return subs().empty();
    default: return false;
  }
}

bool Formula::is_literal() const {
  return is_atomic() || (op() == Op::Not && sub().is_atomic());
}

int compare(const Formula& a, const Formula& b) {
  if (a.same_node(b)) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  if (a.op() == Op::Conn && a.connective() != b.connective())
    return a.connective() < b.connective() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  auto ts = a.terms(), us = b.terms();
  if (ts.size() != us.size()) return ts.size() < us.size() ? -1 : 1;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (int c = compare(ts[i], us[i]); c != 0) return c;
  auto xs = a.subs(), ys = b.subs();
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// Formula sets

FormulaSet make_set(std::vector<Formula> formulas) {
  std::sort(formulas.begin(), formulas.end());
  formulas.erase(std::unique(formulas.begin(), formulas.end()), formulas.end());
  return formulas;
}

bool set_contains(const FormulaSet& set, const Formula& a) {
  return std::binary_search(set.begin(), set.end(), a);
}

FormulaSet set_union(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FormulaSet set_difference(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_subset(const FormulaSet& a, const FormulaSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------------------
// Free variables and substitution

namespace {

void collect_free(const Term& t, VarSet& out) {
  if (t.is_variable()) {
    out.insert(t.name());
    return;
  }
  for (const auto& a : t.args()) collect_free(a, out);
}

void collect_free(const Formula& a, VarSet& out) {
  for (const auto& t : a.terms()) collect_free(t, out);
  if (a.is_quantifier()) {
    VarSet inner;
    collect_free(a.body(), inner);
    inner.erase(a.name());
    out.insert(inner.begin(), inner.end());
    return;
  }
  for (const auto& s : a.subs()) collect_free(s, out);
}

bool occurs_in(const std::string& x, const Term& t) {
  if (t.is_variable()) return t.name() == x;
  for (const auto& a : t.args())
    if (occurs_in(x, a)) return true;
  return false;
}

}  // namespace

VarSet free_vars(const Term& t) {
  VarSet out;
  collect_free(t, out);
  return out;
}

VarSet free_vars(const Formula& a) {
  VarSet out;
  collect_free(a, out);
  return out;
}

VarSet free_vars(std::span<const Formula> formulas) {
  VarSet out;
  for (const auto& a : formulas) collect_free(a, out);
  return out;
}

bool occurs_free(const std::string& x, const Formula& a) {
  for (const auto& t : a.terms())
    if (occurs_in(x, t)) return true;
  if (a.is_quantifier() && a.name() == x) return false;
  for (const auto& s : a.subs())
    if (occurs_free(x, s)) return true;
  return false;
}

std::string fresh_variable(const std::string& base, const VarSet& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int k = 1;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (!avoid.contains(candidate)) return candidate;
  }
}

Term substitute(const Term& e, const std::string& x, const Term& t) {
  if (e.is_variable()) return e.name() == x ? t : e;
  if (e.args().empty()) return e;
  std::vector<Term> args;
  args.reserve(e.args().size());
  bool changed = false;
  for (const auto& a : e.args()) {
    args.push_back(substitute(a, x, t));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::function(e.name(), std::move(args)) : e;
}

namespace {

Formula substitute_free(const Formula& e, const std::string& x, const Term& t,
                        const VarSet& t_vars) {
  switch (e.op()) {
    case Op::False:
    case Op::Prop:
      return e;
    case Op::Pred: {
      std::vector<Term> args;
      for (const auto& a : e.terms()) args.push_back(substitute(a, x, t));
      return Formula::pred(e.name(), std::move(args));
    }
    case Op::Eq:
      return Formula::eq(substitute(e.terms()[0], x, t), substitute(e.terms()[1], x, t));
    case Op::Conn: {
      std::vector<Formula> args;
      for (const auto& s : e.subs())
        args.push_back(occurs_free(x, s) ? substitute_free(s, x, t, t_vars) : s);
      return Formula::conn(e.connective(), std::move(args));
    }
    case Op::Not:
      return Formula::neg(substitute_free(e.sub(), x, t, t_vars));
    case Op::And:
    case Op::Or:
    case Op::Implies: {
      const Formula& l = e.sub(0);
      const Formula& r = e.sub(1);
      Formula nl = occurs_free(x, l) ? substitute_free(l, x, t, t_vars) : l;
      Formula nr = occurs_free(x, r) ? substitute_free(r, x, t, t_vars) : r;
      if (e.op() == Op::And) return Formula::conj(std::move(nl), std::move(nr));
      if (e.op() == Op::Or) return Formula::disj(std::move(nl), std::move(nr));
      return Formula::implies(std::move(nl), std::move(nr));
    }
    case Op::Forall:
    case Op::Exists: {
      std::string y = e.name();
      Formula body = e.body();
      if (t_vars.contains(y)) {
        VarSet avoid = t_vars;
        VarSet body_vars = free_vars(body);
        avoid.insert(body_vars.begin(), body_vars.end());
        avoid.insert(x);
        std::string z = fresh_variable(y, avoid);
        body = substitute(body, y, Term::variable(z));
        y = z;
      }
      Formula nb = substitute_free(body, x, t, t_vars);
      return e.op() == Op::Forall ? Formula::forall(y, std::move(nb))
                                  : Formula::exists(y, std::move(nb));
    }
  }
  return e;
}

}  // namespace

Formula substitute(const Formula& e, const std::string& x, const Term& t) {
  if (!occurs_free(x, e)) return e;
  return substitute_free(e, x, t, free_vars(t));
}

// ---------------------------------------------------------------------------

namespace {

void collect_atoms(const Formula& a, std::vector<Formula>& out) {
  if (a.is_atomic()) {
    out.push_back(a);
    return;
  }
  for (const auto& s : a.subs()) collect_atoms(s, out);
}

void collect_props(const Formula& a, std::set<std::string>& out) {
  if (a.op() == Op::Prop) out.insert(a.name());
  for (const auto& s : a.subs()) collect_props(s, out);
}

}  // namespace

FormulaSet atomic_subformulas(std::span<const Formula> formulas) {
  std::vector<Formula> out;
  for (const auto& a : formulas) collect_atoms(a, out);
  return make_set(std::move(out));
}

std::vector<std::string> proposition_symbols(std::span<const Formula> formulas) {
  std::set<std::string> names;
  for (const auto& a : formulas) collect_props(a, names);
  return {names.begin(), names.end()};
}

// ---------------------------------------------------------------------------
// Signatures

namespace {

void check_identifier(const std::string& name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    throw Error("invalid symbol name '" + name + "'");
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
      throw Error("invalid symbol name '" + name + "'");
  if (is_reserved_word(name)) throw Error("'" + name + "' is a reserved word");
}

}  // namespace

void Signature::add_function(const std::string& name, int arity) {
  check_identifier(name);
  if (arity < 0) throw Error("negative arity for '" + name + "'");
  if (predicates_.contains(name)) throw Error("'" + name + "' is already a predicate symbol");
  auto [it, inserted] = functions_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw Error("function symbol '" + name + "' redeclared with arity " + std::to_string(arity));
}

void Signature::add_predicate(const std::string& name, int arity) {
  check_identifier(name);
  if (arity < 0) throw Error("negative arity for '" + name + "'");
  if (functions_.contains(name)) throw Error("'" + name + "' is already a function symbol");
  auto [it, inserted] = predicates_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw Error("predicate symbol '" + name + "' redeclared with arity " + std::to_string(arity));
}

std::optional<int> Signature::function_arity(const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Signature::predicate_arity(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) return std::nullopt;
  return it->second;
}

bool Signature::declares(const std::string& name) const {
  return functions_.contains(name) || predicates_.contains(name);
}

void Signature::merge(const Signature& other) {
  for (const auto& [name, arity] : other.functions_) add_function(name, arity);
  for (const auto& [name, arity] : other.predicates_) add_predicate(name, arity);
  connectives_ |= other.connectives_;
}

Signature Signature::parse(std::string_view text) {
  Signature sig;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto split_arity = [&](const std::string& spec) -> std::pair<std::string, int> {
    auto slash = spec.find('/');
    if (slash == std::string::npos)
      throw Error("line " + std::to_string(line_no) + ": expected name/arity, got '" + spec + "'");
    std::string name = spec.substr(0, slash);
    std::string digits = spec.substr(slash + 1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw Error("line " + std::to_string(line_no) + ": bad arity in '" + spec + "'");
    return {name, std::stoi(digits)};
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::string kind, spec, extra;
    if (!(words >> kind) || kind[0] == '#') continue;
    if (!(words >> spec))
      throw Error("line " + std::to_string(line_no) + ": missing symbol after '" + kind + "'");
    if (words >> extra && extra[0] != '#')
      throw Error("line " + std::to_string(line_no) + ": unexpected '" + extra + "'");
    try {
      if (kind == "func") {
        auto [name, arity] = split_arity(spec);
        sig.add_function(name, arity);
      } else if (kind == "pred") {
        auto [name, arity] = split_arity(spec);
        sig.add_predicate(name, arity);
      } else if (kind == "const") {
        sig.add_constant(spec);
      } else if (kind == "prop") {
        sig.add_proposition(spec);
      } else if (kind == "conn") {
        auto c = connective_from_name(spec);
        if (!c) throw Error("unknown connective '" + spec + "'");
        sig.enable(*c);
      } else {
        throw Error("unknown declaration '" + kind + "'");
      }
    } catch (const Error& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw Error("line " + std::to_string(line_no) + ": " + msg);
    }
  }
  return sig;
}

std::string Signature::to_string() const {
  std::string out;
  for (const auto& [name, arity] : functions_)
    out += arity == 0 ? "const " + name + "\n" : "func " + name + "/" + std::to_string(arity) + "\n";
  for (const auto& [name, arity] : predicates_)
    out += arity == 0 ? "prop " + name + "\n" : "pred " + name + "/" + std::to_string(arity) + "\n";
  for (Connective c : kExtraConnectives)
    if (enabled(c)) out += "conn " + std::string(connective_name(c)) + "\n";
  return out;
}

namespace {

void declare_term(Signature& sig, const Term& t) {
  if (t.is_variable()) return;
  sig.add_function(t.name(), static_cast<int>(t.args().size()));
  for (const auto& a : t.args()) declare_term(sig, a);
}

void declare_formula(Signature& sig, const Formula& a) {
  switch (a.op()) {
    case Op::Prop: sig.add_proposition(a.name()); break;
    case Op::Pred: sig.add_predicate(a.name(), static_cast<int>(a.terms().size())); break;
    case Op::Conn: sig.enable(a.connective()); break;
    default: break;
  }
  for (const auto& t : a.terms()) declare_term(sig, t);
  for (const auto& s : a.subs()) declare_formula(sig, s);
}

}  // namespace

Signature Signature::of(std::span<const Formula> formulas) {
  Signature sig;
  for (const auto& a : formulas) declare_formula(sig, a);
  return sig;
}

}  // namespace bd4
