#include "bd4/semantics.hpp"

#include <algorithm>
#include <sstream>

#include "bd4/generators.hpp"
#include "bd4/parser.hpp"

namespace bd4 {

TruthValue apply_connective(Connective c, TruthValue a) {
  using enum TruthValue;
  switch (c) {
    case Connective::Des: return designated(a) ? t : f;
    case Connective::Norm: return classical(a) ? t : f;
    case Connective::Cons: return a == b ? f : t;
    case Connective::Det: return a == n ? f : t;
    case Connective::Confl:
      if (a == b) return n;
      if (a == n) return b;
      return a;
    case Connective::Both: return b;
    case Connective::Neither: return n;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Valuations

TruthValue Valuation::at(const std::string& atom) const {
  auto it = values_.find(atom);
  if (it == values_.end()) throw Error("no value assigned to proposition '" + atom + "'");
  return it->second;
}

std::string Valuation::to_string() const {
  std::string out;
  for (const auto& [atom, v] : values_) {
    if (!out.empty()) out += ' ';
    out += atom;
    out += '=';
    out += to_upper_char(v);
  }
  return out;
}

TruthValue evaluate(const Formula& a, const Valuation& v) {
  switch (a.op()) {
    case Op::False: return TruthValue::f;
    case Op::Prop: return v.at(a.name());
    case Op::Conn:
      return a.subs().empty() ? apply_connective(a.connective())
                              : apply_connective(a.connective(), evaluate(a.sub(), v));
    case Op::Not: return negate(evaluate(a.sub(), v));
    case Op::And: return meet(evaluate(a.sub(0), v), evaluate(a.sub(1), v));
    case Op::Or: return join(evaluate(a.sub(0), v), evaluate(a.sub(1), v));
    case Op::Implies: return implies(evaluate(a.sub(0), v), evaluate(a.sub(1), v));
    default:
      throw Error("not a propositional formula: " + print_formula(a));
  }
}

CompiledFormula::CompiledFormula(const Formula& a, const std::vector<std::string>& atoms) {
  auto emit = [&](auto&& self, const Formula& e) -> void {
    for (const auto& s : e.subs()) self(self, s);
    Instr ins{e.op(), e.connective(), -1};
    switch (e.op()) {
      case Op::Prop: {
        auto it = std::find(atoms.begin(), atoms.end(), e.name());
        if (it == atoms.end()) throw Error("proposition '" + e.name() + "' not in the atom list");
        ins.atom = static_cast<int>(it - atoms.begin());
        break;
      }
      case Op::False: case Op::Conn: case Op::Not: case Op::And: case Op::Or: case Op::Implies:
        break;
      default:
        throw Error("not a propositional formula: " + print_formula(e));
    }
    code_.push_back(ins);
  };
  emit(emit, a);
}

TruthValue CompiledFormula::evaluate(std::span<const TruthValue> values) const {
  TruthValue small[64] = {};
  std::vector<TruthValue> large;
  TruthValue* stack = small;
  if (code_.size() > 64) {
    large.resize(code_.size());
    stack = large.data();
  }
  int top = 0;
  for (const Instr& ins : code_) {
    switch (ins.op) {
      case Op::False: stack[top++] = TruthValue::f; break;
      case Op::Prop: stack[top++] = values[ins.atom]; break;
      case Op::Conn:
        if (connective_arity(ins.conn) == 0)
          stack[top++] = apply_connective(ins.conn);
        else
          stack[top - 1] = apply_connective(ins.conn, stack[top - 1]);
        break;
      case Op::Not: stack[top - 1] = negate(stack[top - 1]); break;
      case Op::And: --top; stack[top - 1] = meet(stack[top - 1], stack[top]); break;
      case Op::Or: --top; stack[top - 1] = join(stack[top - 1], stack[top]); break;
      case Op::Implies: --top; stack[top - 1] = implies(stack[top - 1], stack[top]); break;
      default: break;
    }
  }
  return stack[0];
}

namespace {

void require_closed(ValueSet allowed) {
  if (!closed_under_operations(allowed))
    throw Error("value set " + allowed.to_string() + " is not closed under the operations");
}

void require_propositional(std::span<const Formula> formulas) {
  for (const auto& a : formulas)
    if (!a.is_propositional()) throw Error("not a propositional formula: " + print_formula(a));
}

Valuation make_valuation(const std::vector<std::string>& atoms,
                         std::span<const TruthValue> values) {
  Valuation v;
  for (std::size_t i = 0; i < atoms.size(); ++i) v.set(atoms[i], values[i]);
  return v;
}

}  // namespace

PropResult consequence_prop(std::span<const Formula> gamma, std::span<const Formula> delta,
                            ValueSet allowed) {
  require_closed(allowed);
  require_propositional(gamma);
  require_propositional(delta);
  std::vector<Formula> all(gamma.begin(), gamma.end());
  all.insert(all.end(), delta.begin(), delta.end());
  auto atoms = proposition_symbols(all);
  std::vector<CompiledFormula> g, d;
  for (const auto& a : gamma) g.emplace_back(a, atoms);
  for (const auto& a : delta) d.emplace_back(a, atoms);
  PropResult result;
  result.holds = for_each_valuation(
      static_cast<int>(atoms.size()), allowed, [&](std::span<const TruthValue> values) {
        for (const auto& a : g)
          if (!designated(a.evaluate(values))) return true;
        for (const auto& a : d)
          if (designated(a.evaluate(values))) return true;
        result.witness = make_valuation(atoms, values);
        return false;
      });
  return result;
}

PropResult consequence_prop(const Sequent& s, ValueSet allowed) {
  return consequence_prop(s.antecedent, s.succedent, allowed);
}

PropResult equivalent_prop(const Formula& a, const Formula& b) {
  std::vector<Formula> both = {a, b};
  require_propositional(both);
  auto atoms = proposition_symbols(both);
  CompiledFormula ca(a, atoms), cb(b, atoms);
  PropResult result;
  result.holds = for_each_valuation(static_cast<int>(atoms.size()), kFourValues,
                                    [&](std::span<const TruthValue> values) {
                                      if (ca.evaluate(values) == cb.evaluate(values)) return true;
                                      result.witness = make_valuation(atoms, values);
                                      return false;
                                    });
  return result;
}

PropResult synonymous_prop(const Formula& a, const Formula& b) {
  const Formula na = Formula::neg(a), nb = Formula::neg(b);
  const std::pair<const Formula*, const Formula*> checks[] = {
      {&a, &b}, {&b, &a}, {&na, &nb}, {&nb, &na}};
  for (const auto& [lhs, rhs] : checks) {
    PropResult r = consequence_prop(std::span(lhs, 1), std::span(rhs, 1));
    if (!r.holds) {
      // Keep the witness total on the atoms of both formulas.
      std::vector<Formula> both = {a, b};
      for (const auto& atom : proposition_symbols(both))
        if (!r.witness->contains(atom)) r.witness->set(atom, TruthValue::t);
      return r;
    }
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Structures

ValueSet equality_choices(StructureMode mode, EqualityMode eq, int d1, int d2) {
  using enum TruthValue;
  if (mode == StructureMode::Partial && (d1 == 0 || d2 == 0)) return ValueSet{n};
  if (d1 == d2) return ValueSet{t, b};
  if (eq == EqualityMode::Loose) return kFourValues;
  return mode == StructureMode::Partial ? ValueSet{f} : ValueSet{f, n};
}

std::size_t tuple_index(std::span<const int> args, int n) {
  std::size_t index = 0;
  for (int a : args) index = index * n + a;
  return index;
}

namespace {

std::size_t table_size(int n, int arity) {
  std::size_t size = 1;
  for (int i = 0; i < arity; ++i) size *= n;
  return size;
}

}  // namespace

int Structure::function_value(const std::string& name, std::span<const int> args) const {
  auto it = functions.find(name);
  if (it == functions.end()) throw Error("function symbol '" + name + "' not in the structure");
  if (static_cast<int>(args.size()) != it->second.arity)
    throw Error("function symbol '" + name + "' applied to the wrong number of arguments");
  return it->second.values[tuple_index(args, size())];
}

TruthValue Structure::predicate_value(const std::string& name, std::span<const int> args) const {
  auto it = predicates.find(name);
  if (it == predicates.end()) throw Error("predicate symbol '" + name + "' not in the structure");
  if (static_cast<int>(args.size()) != it->second.arity)
    throw Error("predicate symbol '" + name + "' applied to the wrong number of arguments");
  return it->second.values[tuple_index(args, size())];
}

void Structure::validate(EqualityMode eq) const {
  const int n = size();
  if (n == 0) throw Error("the domain is empty");
  if (mode == StructureMode::Partial && n < 2)
    throw Error("a partial structure needs a defined element besides the undefined one");
  for (const auto& [name, table] : functions) {
    if (table.values.size() != table_size(n, table.arity))
      throw Error("function table of '" + name + "' has the wrong size");
    for (int v : table.values)
      if (v < 0 || v >= n) throw Error("function table of '" + name + "' leaves the domain");
  }
  for (const auto& [name, table] : predicates)
    if (table.values.size() != table_size(n, table.arity))
      throw Error("predicate table of '" + name + "' has the wrong size");
  if (equality.size() != static_cast<std::size_t>(n) * n)
    throw Error("equality table has the wrong size");
  for (int d1 = 0; d1 < n; ++d1)
    for (int d2 = 0; d2 < n; ++d2) {
      TruthValue v = equality_value(d1, d2);
      if (!equality_choices(mode, eq, d1, d2).contains(v))
        throw Error(std::string("equality on (") + elements[d1] + ", " + elements[d2] +
                    ") cannot be " + to_upper_char(v));
    }
}

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

TruthValue default_equality(StructureMode mode, int d1, int d2) {
  if (mode == StructureMode::Partial && (d1 == 0 || d2 == 0)) return TruthValue::n;
  return d1 == d2 ? TruthValue::t : TruthValue::f;
}

}  // namespace

Structure parse_structure(std::string_view text) {
  struct Line {
    int number;
    std::vector<std::string> words;
  };
  std::vector<Line> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      auto words = split_words(raw);
      if (!words.empty()) lines.push_back({number, std::move(words)});
    }
  }
  auto fail = [](int number, const std::string& message) -> Error {
    return Error("structure line " + std::to_string(number) + ": " + message);
  };

  Structure m;
  std::optional<std::string> bottom;
  for (const auto& line : lines) {
    if (line.words[0] == "domain") {
      if (!m.elements.empty()) throw fail(line.number, "domain declared twice");
      m.elements.assign(line.words.begin() + 1, line.words.end());
      if (m.elements.empty()) throw fail(line.number, "empty domain");
    } else if (line.words[0] == "bottom") {
      if (line.words.size() != 2) throw fail(line.number, "expected 'bottom <element>'");
      bottom = line.words[1];
    }
  }
  if (m.elements.empty()) throw Error("structure has no 'domain' line");
  {
    auto sorted = m.elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("structure domain lists an element twice");
  }
  if (bottom) {
    auto it = std::find(m.elements.begin(), m.elements.end(), *bottom);
    if (it == m.elements.end()) throw Error("bottom element '" + *bottom + "' not in the domain");
    std::rotate(m.elements.begin(), it, it + 1);
    m.mode = StructureMode::Partial;
  }
  const int n = m.size();
  auto element = [&](const Line& line, const std::string& name) {
    auto it = std::find(m.elements.begin(), m.elements.end(), name);
    if (it == m.elements.end()) throw fail(line.number, "unknown element '" + name + "'");
    return static_cast<int>(it - m.elements.begin());
  };
  auto value = [&](const Line& line, const std::string& word) {
    auto v = parse_truth_value(word);
    if (!v) throw fail(line.number, "expected a truth value T, B, N or F, got '" + word + "'");
    return *v;
  };

  m.equality.resize(static_cast<std::size_t>(n) * n);
  for (int d1 = 0; d1 < n; ++d1)
    for (int d2 = 0; d2 < n; ++d2) m.equality_at(d1, d2) = default_equality(m.mode, d1, d2);

  std::map<std::string, std::vector<bool>> function_defined;
  for (const auto& line : lines) {
    const auto& w = line.words;
    const std::string& kind = w[0];
    if (kind == "domain" || kind == "bottom") continue;
    if (kind == "const") {
      if (w.size() != 4 || w[2] != "=") throw fail(line.number, "expected 'const c = d'");
      auto& table = m.functions[w[1]];
      if (!table.values.empty()) throw fail(line.number, "constant '" + w[1] + "' given twice");
      table.arity = 0;
      table.values = {element(line, w[3])};
      function_defined[w[1]] = {true};
    } else if (kind == "func") {
      auto arrow = std::find(w.begin(), w.end(), "->");
      if (w.size() < 4 || arrow == w.end() || arrow + 2 != w.end())
        throw fail(line.number, "expected 'func f d1 ... dk -> d'");
      int arity = static_cast<int>(arrow - w.begin()) - 2;
      if (arity < 1) throw fail(line.number, "function entries need arguments; use 'const'");
      auto [it, inserted] = m.functions.try_emplace(w[1]);
      if (inserted) {
        it->second.arity = arity;
        it->second.values.assign(table_size(n, arity), 0);
        function_defined[w[1]].assign(table_size(n, arity), false);
      } else if (it->second.arity != arity) {
        throw fail(line.number, "function '" + w[1] + "' used with two arities");
      }
      std::vector<int> args;
      for (int i = 0; i < arity; ++i) args.push_back(element(line, w[2 + i]));
      auto index = tuple_index(args, n);
      if (function_defined[w[1]][index]) throw fail(line.number, "entry given twice");
      function_defined[w[1]][index] = true;
      it->second.values[index] = element(line, w.back());
    } else if (kind == "pred" || kind == "prop") {
      if (w.size() < 4 || w[w.size() - 2] != "=")
        throw fail(line.number, "expected '" + kind + " P d1 ... dk = V'");
      int arity = static_cast<int>(w.size()) - 4;
      if (kind == "prop" && arity != 0) throw fail(line.number, "expected 'prop p = V'");
      auto [it, inserted] = m.predicates.try_emplace(w[1]);
      if (inserted) {
        it->second.arity = arity;
        it->second.values.assign(table_size(n, arity), TruthValue::f);
      } else if (it->second.arity != arity) {
        throw fail(line.number, "predicate '" + w[1] + "' used with two arities");
      }
      std::vector<int> args;
      for (int i = 0; i < arity; ++i) args.push_back(element(line, w[2 + i]));
      it->second.values[tuple_index(args, n)] = value(line, w.back());
    } else if (kind == "eq") {
      if (w.size() != 5 || w[3] != "=") throw fail(line.number, "expected 'eq d1 d2 = V'");
      m.equality_at(element(line, w[1]), element(line, w[2])) = value(line, w[4]);
    } else {
      throw fail(line.number, "unknown entry '" + kind + "'");
    }
  }
  for (const auto& [name, defined] : function_defined)
    if (std::find(defined.begin(), defined.end(), false) != defined.end())
      throw Error("function table of '" + name + "' is incomplete");
  m.validate(EqualityMode::Loose);
  return m;
}

std::string print_structure(const Structure& m) {
  std::string out = "domain";
  for (const auto& e : m.elements) out += " " + e;
  out += "\n";
  if (m.mode == StructureMode::Partial) out += "bottom " + m.elements[0] + "\n";
  const int n = m.size();
  auto for_each_tuple = [n](int arity, auto&& fn) {
    std::vector<int> args(arity, 0);
    std::size_t count = table_size(n, arity);
    for (std::size_t idx = 0; idx < count; ++idx) {
      fn(args, idx);
      for (int i = arity - 1; i >= 0; --i) {
        if (++args[i] < n) break;
        args[i] = 0;
      }
    }
  };
  for (const auto& [name, table] : m.functions) {
    if (table.arity == 0) {
      out += "const " + name + " = " + m.elements[table.values[0]] + "\n";
      continue;
    }
    for_each_tuple(table.arity, [&](const std::vector<int>& args, std::size_t idx) {
      out += "func " + name;
      for (int a : args) out += " " + m.elements[a];
      out += " -> " + m.elements[table.values[idx]] + "\n";
    });
  }
  for (const auto& [name, table] : m.predicates) {
    if (table.arity == 0) {
      out += std::string("prop ") + name + " = " + to_upper_char(table.values[0]) + "\n";
      continue;
    }
    for_each_tuple(table.arity, [&](const std::vector<int>& args, std::size_t idx) {
      out += "pred " + name;
      for (int a : args) out += " " + m.elements[a];
      out += std::string(" = ") + to_upper_char(table.values[idx]) + "\n";
    });
  }
  for (int d1 = 0; d1 < n; ++d1)
    for (int d2 = 0; d2 < n; ++d2)
      if (m.equality_value(d1, d2) != default_equality(m.mode, d1, d2))
        out += "eq " + m.elements[d1] + " " + m.elements[d2] + " = " +
               to_upper_char(m.equality_value(d1, d2)) + "\n";
  return out;
}

std::string print_assignment(const Assignment& alpha, const Structure& m) {
  std::string out;
  for (const auto& [var, d] : alpha) {
    if (!out.empty()) out += ' ';
    out += var + "=" + m.elements.at(d);
  }
  return out;
}

int evaluate(const Term& t, const Structure& m, const Assignment& alpha) {
  if (t.is_variable()) {
    auto it = alpha.find(t.name());
    if (it == alpha.end()) throw Error("unbound variable '" + t.name() + "'");
    return it->second;
  }
  std::vector<int> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(evaluate(a, m, alpha));
  return m.function_value(t.name(), args);
}

namespace {

TruthValue evaluate_in(const Formula& a, const Structure& m, Assignment& alpha) {
  switch (a.op()) {
    case Op::False: return TruthValue::f;
    case Op::Prop: return m.predicate_value(a.name(), {});
    case Op::Pred: {
      std::vector<int> args;
      for (const auto& t : a.terms()) args.push_back(evaluate(t, m, alpha));
      return m.predicate_value(a.name(), args);
    }
    case Op::Eq:
      return m.equality_value(evaluate(a.terms()[0], m, alpha), evaluate(a.terms()[1], m, alpha));
    case Op::Conn:
      return a.subs().empty() ? apply_connective(a.connective())
                              : apply_connective(a.connective(), evaluate_in(a.sub(), m, alpha));
    case Op::Not: return negate(evaluate_in(a.sub(), m, alpha));
    case Op::And: return meet(evaluate_in(a.sub(0), m, alpha), evaluate_in(a.sub(1), m, alpha));
    case Op::Or: return join(evaluate_in(a.sub(0), m, alpha), evaluate_in(a.sub(1), m, alpha));
    case Op::Implies:
      return implies(evaluate_in(a.sub(0), m, alpha), evaluate_in(a.sub(1), m, alpha));
    case Op::Forall:
    case Op::Exists: {
      std::optional<int> saved;
      if (auto it = alpha.find(a.name()); it != alpha.end()) saved = it->second;
      ValueSet seen;
      for (int d = 0; d < m.size(); ++d) {
        alpha[a.name()] = d;
        seen = seen.insert(evaluate_in(a.body(), m, alpha));
      }
      if (saved)
        alpha[a.name()] = *saved;
      else
        alpha.erase(a.name());
      return a.op() == Op::Forall ? seen.inf() : seen.sup();
    }
  }
  return TruthValue::f;
}

}  // namespace

TruthValue evaluate(const Formula& a, const Structure& m, const Assignment& alpha) {
  Assignment local = alpha;
  for (const auto& [var, d] : local)
    if (d < 0 || d >= m.size()) throw Error("variable '" + var + "' assigned outside the domain");
  return evaluate_in(a, m, local);
}

// ---------------------------------------------------------------------------
// Bounded first-order consequence

namespace {

// Formulas compiled against numbered symbols, evaluated over flat tables.
class FoProgram {
 public:
  struct Symbols {
    std::vector<std::string> functions;
    std::vector<int> function_arity;
    std::vector<std::string> predicates;
    std::vector<int> predicate_arity;
    std::vector<std::string> variables;
    std::vector<std::string> free_variables;
    bool uses_equality = false;
  };

  struct Tables {
    int n = 0;
    std::vector<std::vector<int>> functions;
    std::vector<std::vector<TruthValue>> predicates;
    std::vector<TruthValue> equality;
    std::vector<int> vars;
  };

  explicit FoProgram(std::span<const Formula> formulas) {
    Signature sig = Signature::of(formulas);
    for (const auto& [name, arity] : sig.functions()) {
      symbols_.functions.push_back(name);
      symbols_.function_arity.push_back(arity);
    }
    for (const auto& [name, arity] : sig.predicates()) {
      symbols_.predicates.push_back(name);
      symbols_.predicate_arity.push_back(arity);
    }
    VarSet free = free_vars(formulas);
    symbols_.free_variables.assign(free.begin(), free.end());
    symbols_.variables = symbols_.free_variables;
    for (const auto& a : formulas) roots_.push_back(compile(a));
  }

  const Symbols& symbols() const { return symbols_; }
  std::size_t size() const { return roots_.size(); }

  TruthValue eval(std::size_t root, Tables& tb) const { return eval_node(roots_[root], tb); }

 private:
  struct CTerm {
    int var = -1;
    int fn = -1;
    std::vector<CTerm> args;
  };
  struct CNode {
    Op op;
    Connective conn = Connective::Des;
    int symbol = -1;
    int var = -1;
    std::vector<CTerm> terms;
    std::vector<CNode> kids;
  };

  static int index_in(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
  }

  int variable_slot(const std::string& name) {
    int i = index_in(symbols_.variables, name);
    if (i >= 0) return i;
    symbols_.variables.push_back(name);
    return static_cast<int>(symbols_.variables.size()) - 1;
  }

  CTerm compile(const Term& t) {
    CTerm c;
    if (t.is_variable()) {
      c.var = variable_slot(t.name());
      return c;
    }
    c.fn = index_in(symbols_.functions, t.name());
    for (const auto& a : t.args()) c.args.push_back(compile(a));
    return c;
  }

  CNode compile(const Formula& a) {
    CNode c{a.op()};
    c.conn = a.connective();
    if (a.op() == Op::Prop || a.op() == Op::Pred) c.symbol = index_in(symbols_.predicates, a.name());
    if (a.op() == Op::Eq) symbols_.uses_equality = true;
    if (a.is_quantifier()) c.var = variable_slot(a.name());
    for (const auto& t : a.terms()) c.terms.push_back(compile(t));
    for (const auto& s : a.subs()) c.kids.push_back(compile(s));
    return c;
  }

  static int eval_term(const CTerm& t, const Tables& tb) {
    if (t.var >= 0) return tb.vars[t.var];
    std::size_t index = 0;
    for (const auto& a : t.args) index = index * tb.n + eval_term(a, tb);
    return tb.functions[t.fn][index];
  }

  TruthValue eval_node(const CNode& c, Tables& tb) const {
    switch (c.op) {
      case Op::False: return TruthValue::f;
      case Op::Prop: return tb.predicates[c.symbol][0];
      case Op::Pred: {
        std::size_t index = 0;
        for (const auto& t : c.terms) index = index * tb.n + eval_term(t, tb);
        return tb.predicates[c.symbol][index];
      }
      case Op::Eq:
        return tb.equality[eval_term(c.terms[0], tb) * tb.n + eval_term(c.terms[1], tb)];
      case Op::Conn:
        return c.kids.empty() ? apply_connective(c.conn)
                              : apply_connective(c.conn, eval_node(c.kids[0], tb));
      case Op::Not: return negate(eval_node(c.kids[0], tb));
      case Op::And: {
        TruthValue l = eval_node(c.kids[0], tb);
        if (l == TruthValue::f) return l;
        return meet(l, eval_node(c.kids[1], tb));
      }
      case Op::Or: {
        TruthValue l = eval_node(c.kids[0], tb);
        if (l == TruthValue::t) return l;
        return join(l, eval_node(c.kids[1], tb));
      }
      case Op::Implies: {
        TruthValue l = eval_node(c.kids[0], tb);
        if (!designated(l)) return TruthValue::t;
        return eval_node(c.kids[1], tb);
      }
      case Op::Forall:
      case Op::Exists: {
        int saved = tb.vars[c.var];
        TruthValue acc = c.op == Op::Forall ? TruthValue::t : TruthValue::f;
        for (int d = 0; d < tb.n; ++d) {
          tb.vars[c.var] = d;
          TruthValue v = eval_node(c.kids[0], tb);
          acc = c.op == Op::Forall ? meet(acc, v) : join(acc, v);
        }
        tb.vars[c.var] = saved;
        return acc;
      }
    }
    return TruthValue::f;
  }

  Symbols symbols_;
  std::vector<CNode> roots_;
};

// One position of the structure odometer.
struct Slot {
  enum class Kind { Function, Predicate, Equality } kind;
  int table;
  std::size_t index;
  std::vector<int> choices;  // element ids or truth value indices
};

std::vector<std::string> element_names(int n, StructureMode mode) {
  std::vector<std::string> names;
  for (int d = 0; d < n; ++d) {
    if (mode == StructureMode::Partial)
      names.push_back(d == 0 ? "bot" : "d" + std::to_string(d));
    else
      names.push_back("d" + std::to_string(d + 1));
  }
  return names;
}

std::vector<Slot> make_slots(const FoProgram::Symbols& sym, int n, const FoOptions& options) {
  std::vector<Slot> slots;
  std::vector<int> elements(n);
  for (int d = 0; d < n; ++d) elements[d] = d;
  for (std::size_t f = 0; f < sym.functions.size(); ++f)
    for (std::size_t i = 0; i < table_size(n, sym.function_arity[f]); ++i)
      slots.push_back({Slot::Kind::Function, static_cast<int>(f), i, elements});
  std::vector<int> values;
  for (TruthValue v : kEnumerationOrder)
    if (options.allowed.contains(v)) values.push_back(index_of(v));
  for (std::size_t p = 0; p < sym.predicates.size(); ++p)
    for (std::size_t i = 0; i < table_size(n, sym.predicate_arity[p]); ++i)
      slots.push_back({Slot::Kind::Predicate, static_cast<int>(p), i, values});
  if (sym.uses_equality) {
    for (int d1 = 0; d1 < n; ++d1)
      for (int d2 = 0; d2 < n; ++d2) {
        std::vector<int> choices;
        ValueSet allowed = equality_choices(options.mode, options.equality, d1, d2);
        for (TruthValue v : kEnumerationOrder)
          if (allowed.contains(v)) choices.push_back(index_of(v));
        if (choices.size() > 1)
          slots.push_back({Slot::Kind::Equality, 0, static_cast<std::size_t>(d1 * n + d2), choices});
      }
  }
  return slots;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t search_size(const FoProgram::Symbols& sym, int n, const FoOptions& options) {
  std::uint64_t total = 1;
  for (const Slot& s : make_slots(sym, n, options)) total = saturating_mul(total, s.choices.size());
  for (std::size_t i = 0; i < sym.free_variables.size(); ++i) total = saturating_mul(total, n);
  return total;
}

void write_slot(const Slot& s, int choice, FoProgram::Tables& tb) {
  int v = s.choices[choice];
  switch (s.kind) {
    case Slot::Kind::Function: tb.functions[s.table][s.index] = v; break;
    case Slot::Kind::Predicate: tb.predicates[s.table][s.index] = value_at(v); break;
    case Slot::Kind::Equality: tb.equality[s.index] = value_at(v); break;
  }
}

Structure to_structure(const FoProgram::Symbols& sym, const FoProgram::Tables& tb,
                       StructureMode mode) {
  Structure m;
  m.elements = element_names(tb.n, mode);
  m.mode = mode;
  for (std::size_t f = 0; f < sym.functions.size(); ++f)
    m.functions[sym.functions[f]] = {sym.function_arity[f], tb.functions[f]};
  for (std::size_t p = 0; p < sym.predicates.size(); ++p)
    m.predicates[sym.predicates[p]] = {sym.predicate_arity[p], tb.predicates[p]};
  m.equality = tb.equality;
  return m;
}

}  // namespace

std::uint64_t fo_search_size(std::span<const Formula> formulas, int domain,
                             const FoOptions& options) {
  FoProgram program(formulas);
  return search_size(program.symbols(), domain, options);
}

namespace {

// Sets up tables for domain size n and calls fn(tb) once per structure.
// Stops early, returning false, when fn does.
template <typename Fn>
bool for_each_structure(const FoProgram::Symbols& sym, int n, const FoOptions& options, Fn&& fn) {
  FoProgram::Tables tb;
  tb.n = n;
  for (int arity : sym.function_arity) tb.functions.emplace_back(table_size(n, arity), 0);
  for (int arity : sym.predicate_arity) tb.predicates.emplace_back(table_size(n, arity), TruthValue::f);
  tb.equality.resize(static_cast<std::size_t>(n) * n);
  for (int d1 = 0; d1 < n; ++d1)
    for (int d2 = 0; d2 < n; ++d2) {
      ValueSet allowed = equality_choices(options.mode, options.equality, d1, d2);
      TruthValue first = TruthValue::t;
      for (TruthValue v : kEnumerationOrder)
        if (allowed.contains(v)) {
          first = v;
          break;
        }
      tb.equality[d1 * n + d2] = first;
    }
  tb.vars.assign(sym.variables.size(), 0);

  std::vector<Slot> slots = make_slots(sym, n, options);
  std::vector<int> digits(slots.size(), 0);
  for (const Slot& s : slots) write_slot(s, 0, tb);
  while (true) {
    if (!fn(tb)) return false;
    std::size_t k = slots.size();
    while (k > 0 && digits[k - 1] + 1 == static_cast<int>(slots[k - 1].choices.size())) {
      digits[k - 1] = 0;
      write_slot(slots[k - 1], 0, tb);
      --k;
    }
    if (k == 0) return true;
    ++digits[k - 1];
    write_slot(slots[k - 1], digits[k - 1], tb);
  }
}

// Calls fn() for every assignment of the free variables, which occupy the
// first variable slots.
template <typename Fn>
bool for_each_assignment(std::size_t free_count, FoProgram::Tables& tb, Fn&& fn) {
  std::vector<int> assign(free_count, 0);
  while (true) {
    for (std::size_t i = 0; i < free_count; ++i) tb.vars[i] = assign[i];
    if (!fn()) return false;
    std::size_t i = free_count;
    while (i > 0 && assign[i - 1] == tb.n - 1) assign[--i] = 0;
    if (i == 0) return true;
    ++assign[i - 1];
  }
}

}  // namespace

FoResult consequence_fo(std::span<const Formula> gamma, std::span<const Formula> delta,
                        const FoOptions& options) {
  if (options.max_domain < 1) throw Error("the domain bound must be positive");
  require_closed(options.allowed);
  std::vector<Formula> all(gamma.begin(), gamma.end());
  all.insert(all.end(), delta.begin(), delta.end());
  FoProgram program(all);
  const auto& sym = program.symbols();
  const std::size_t ng = gamma.size();
  const std::size_t free_count = sym.free_variables.size();

  FoResult result;
  const int smallest = options.mode == StructureMode::Partial ? 2 : 1;
  for (int n = smallest; n <= options.max_domain; ++n) {
    std::uint64_t size = search_size(sym, n, options);
    if (size == UINT64_MAX || result.examined + size > options.cap) {
      result.status = FoResult::Status::BoundExceeded;
      return result;
    }
    bool done = !for_each_structure(sym, n, options, [&](FoProgram::Tables& tb) {
      return for_each_assignment(free_count, tb, [&] {
        ++result.examined;
        for (std::size_t i = 0; i < ng; ++i)
          if (!designated(program.eval(i, tb))) return true;
        for (std::size_t i = ng; i < program.size(); ++i)
          if (designated(program.eval(i, tb))) return true;
        result.status = FoResult::Status::Countermodel;
        result.structure = to_structure(sym, tb, options.mode);
        for (std::size_t v = 0; v < free_count; ++v)
          result.assignment[sym.free_variables[v]] = tb.vars[v];
        return false;
      });
    });
    if (done) {
      result.searched_up_to = n - 1;
      return result;
    }
    result.searched_up_to = n;
  }
  return result;
}

RulePreservation preserves_truth_fo(std::span<const Sequent> premises, const Sequent& conclusion,
                                    const FoOptions& options) {
  if (options.max_domain < 1) throw Error("the domain bound must be positive");
  require_closed(options.allowed);
  // Formulas laid out premise by premise, then the conclusion.
  std::vector<Formula> all;
  std::vector<std::pair<std::size_t, std::size_t>> bounds;  // [begin, split), [split, end)
  std::vector<std::size_t> ends;
  auto add = [&](const Sequent& s) {
    std::size_t begin = all.size();
    all.insert(all.end(), s.antecedent.begin(), s.antecedent.end());
    std::size_t split = all.size();
    all.insert(all.end(), s.succedent.begin(), s.succedent.end());
    bounds.emplace_back(begin, split);
    ends.push_back(all.size());
  };
  for (const auto& p : premises) add(p);
  add(conclusion);
  FoProgram program(all);
  const auto& sym = program.symbols();
  const std::size_t free_count = sym.free_variables.size();

  auto satisfied = [&](std::size_t k, FoProgram::Tables& tb) {
    for (std::size_t i = bounds[k].first; i < bounds[k].second; ++i)
      if (!designated(program.eval(i, tb))) return true;
    for (std::size_t i = bounds[k].second; i < ends[k]; ++i)
      if (designated(program.eval(i, tb))) return true;
    return false;
  };
  auto holds_everywhere = [&](std::size_t k, FoProgram::Tables& tb) {
    return for_each_assignment(free_count, tb, [&] { return satisfied(k, tb); });
  };

  RulePreservation result;
  std::uint64_t work = 0;
  const int smallest = options.mode == StructureMode::Partial ? 2 : 1;
  for (int n = smallest; n <= options.max_domain; ++n) {
    std::uint64_t size = search_size(sym, n, options);
    if (size == UINT64_MAX || work + size > options.cap) {
      result.bound_exceeded = true;
      return result;
    }
    bool ok = for_each_structure(sym, n, options, [&](FoProgram::Tables& tb) {
      ++result.examined;
      for (std::size_t k = 0; k < premises.size(); ++k)
        if (!holds_everywhere(k, tb)) return true;
      ++result.premise_models;
      if (holds_everywhere(premises.size(), tb)) return true;
      result.counter_structure = to_structure(sym, tb, options.mode);
      return false;
    });
    if (!ok) {
      result.holds = false;
      return result;
    }
    work += size;
  }
  return result;
}

RulePreservation preserves_truth_prop(std::span<const Sequent> premises, const Sequent& conclusion,
                                      ValueSet allowed) {
  require_closed(allowed);
  std::vector<Formula> all;
  for (const auto& p : premises) {
    all.insert(all.end(), p.antecedent.begin(), p.antecedent.end());
    all.insert(all.end(), p.succedent.begin(), p.succedent.end());
  }
  all.insert(all.end(), conclusion.antecedent.begin(), conclusion.antecedent.end());
  all.insert(all.end(), conclusion.succedent.begin(), conclusion.succedent.end());
  require_propositional(all);
  std::vector<std::string> atoms = proposition_symbols(all);
  struct Compiled {
    std::vector<CompiledFormula> ante, succ;
  };
  auto compile = [&](const Sequent& s) {
    Compiled c;
    for (const auto& a : s.antecedent) c.ante.emplace_back(a, atoms);
    for (const auto& a : s.succedent) c.succ.emplace_back(a, atoms);
    return c;
  };
  std::vector<Compiled> prem;
  for (const auto& p : premises) prem.push_back(compile(p));
  Compiled concl = compile(conclusion);
  auto satisfied = [](const Compiled& c, std::span<const TruthValue> v) {
    for (const auto& a : c.ante)
      if (!designated(a.evaluate(v))) return true;
    for (const auto& a : c.succ)
      if (designated(a.evaluate(v))) return true;
    return false;
  };

  RulePreservation result;
  for_each_valuation(static_cast<int>(atoms.size()), allowed, [&](std::span<const TruthValue> v) {
    ++result.examined;
    for (const auto& p : prem)
      if (!satisfied(p, v)) return true;
    ++result.premise_models;
    if (satisfied(concl, v)) return true;
    result.holds = false;
    result.counter_valuation = make_valuation(atoms, v);
    return false;
  });
  return result;
}

FoResult consequence_fo(const Sequent& s, const FoOptions& options) {
  return consequence_fo(s.antecedent, s.succedent, options);
}

// ---------------------------------------------------------------------------
// Normality probe

bool NormalityReport::all_hold() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const Property& p) { return p.failures == 0; });
}

namespace {

std::vector<Formula> with(std::vector<Formula> base, const Formula& a) {
  base.push_back(a);
  return base;
}

std::string describe_instance(const std::vector<Formula>& gamma, const std::vector<Formula>& delta,
                              const Formula& a1, const Formula& a2) {
  return "Gamma={" + print_formula_list(gamma) + "} Delta={" + print_formula_list(delta) +
         "} A1=" + print_formula(a1) + " A2=" + print_formula(a2);
}

bool fo_valid(const std::vector<Formula>& gamma, const std::vector<Formula>& delta) {
  FoOptions options;
  options.max_domain = 2;
  return consequence_fo(gamma, delta, options).status == FoResult::Status::NoCountermodel;
}

}  // namespace

NormalityReport normality_probe(std::uint64_t seed, int samples) {
  using Property = NormalityReport::Property;
  NormalityReport report;
  Rng rng(seed);

  Property noninclusion{"atom-noninclusion"};
  for (const char* name : {"p", "q", "r"}) {
    Formula p = Formula::prop(name), np = Formula::neg(p);
    for (auto [lhs, rhs] : {std::pair{p, np}, std::pair{np, p}}) {
      ++noninclusion.instances;
      if (consequence_prop(std::span(&lhs, 1), std::span(&rhs, 1)).holds) {
        ++noninclusion.failures;
        if (noninclusion.first_failure.empty())
          noninclusion.first_failure = print_formula(lhs) + " |= " + print_formula(rhs);
      }
    }
  }

  Property and_right{"and-right-split"}, or_left{"or-left-split"}, deduction{"deduction"};
  PropGenOptions gen;
  gen.atoms = {"p", "q", "r"};
  gen.max_depth = 2;
  auto random_list = [&](auto&& make) {
    std::vector<Formula> out;
    int count = uniform(rng, 0, 2);
    for (int i = 0; i < count; ++i) out.push_back(make());
    return out;
  };
  auto prop = [&] { return random_prop_formula(rng, gen); };
  auto record = [](Property& p, bool agree, const std::string& instance) {
    ++p.instances;
    if (!agree) {
      ++p.failures;
      if (p.first_failure.empty()) p.first_failure = instance;
    }
  };
  for (int s = 0; s < samples; ++s) {
    auto gamma = random_list(prop), delta = random_list(prop);
    Formula a1 = prop(), a2 = prop();
    std::string instance = describe_instance(gamma, delta, a1, a2);
    auto holds = [](const std::vector<Formula>& g, const std::vector<Formula>& d) {
      return consequence_prop(g, d).holds;
    };
    record(and_right,
           holds(gamma, with(delta, Formula::conj(a1, a2))) ==
               (holds(gamma, with(delta, a1)) && holds(gamma, with(delta, a2))),
           instance);
    record(or_left,
           holds(with(gamma, Formula::disj(a1, a2)), delta) ==
               (holds(with(gamma, a1), delta) && holds(with(gamma, a2), delta)),
           instance);
    record(deduction,
           holds(gamma, with(delta, Formula::implies(a1, a2))) ==
               holds(with(gamma, a1), with(delta, a2)),
           instance);
  }

  Property forall_right{"forall-right"}, exists_left{"exists-left"};
  FoGenOptions fo;
  fo.max_depth = 2;
  auto fo_formula = [&] { return random_fo_formula(rng, fo); };
  // Side formulas in which x does not occur free.
  auto side = [&] {
    while (true) {
      Formula a = fo_formula();
      if (!occurs_free("x", a)) return a;
    }
  };
  const int fo_samples = std::max(1, samples / 10);
  for (int s = 0; s < fo_samples; ++s) {
    auto gamma = random_list(side), delta = random_list(side);
    Formula a1 = fo_formula();
    std::string instance = describe_instance(gamma, delta, a1, a1);
    record(forall_right,
           fo_valid(gamma, with(delta, Formula::forall("x", a1))) ==
               fo_valid(gamma, with(delta, a1)),
           instance);
    record(exists_left,
           fo_valid(with(gamma, Formula::exists("x", a1)), delta) ==
               fo_valid(with(gamma, a1), delta),
           instance);
  }

  report.properties = {noninclusion, and_right, or_left, deduction, forall_right, exists_left};
  return report;
}

}  // namespace bd4
