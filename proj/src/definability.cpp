#include "bd4/definability.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "bd4/parser.hpp"
#include "bd4/semantics.hpp"

namespace bd4 {

namespace {

std::size_t table_size(int arity) {
  if (arity < 0 || arity > 8) throw Error("unsupported arity " + std::to_string(arity));
  return std::size_t{1} << (2 * arity);
}

// Argument tuple of a table index, first argument most significant.
void decode(std::size_t index, int arity, TruthValue* out) {
  for (int i = arity - 1; i >= 0; --i) {
    out[i] = value_at(static_cast<int>(index & 3));
    index >>= 2;
  }
}

}  // namespace

TruthFunction::TruthFunction(int arity, std::vector<TruthValue> table)
    : arity_(arity), table_(std::move(table)) {
  if (table_.size() != table_size(arity))
    throw Error("a truth function of arity " + std::to_string(arity) + " needs " +
                std::to_string(table_size(arity)) + " entries, got " +
                std::to_string(table_.size()));
}

TruthFunction TruthFunction::constant(int arity, TruthValue v) {
  return TruthFunction(arity, std::vector<TruthValue>(table_size(arity), v));
}

TruthFunction TruthFunction::projection(int arity, int i) {
  if (i < 0 || i >= arity) throw Error("projection index out of range");
  std::vector<TruthValue> table(table_size(arity));
  TruthValue args[8];
  for (std::size_t k = 0; k < table.size(); ++k) {
    decode(k, arity, args);
    table[k] = args[i];
  }
  return TruthFunction(arity, std::move(table));
}

TruthFunction TruthFunction::parse(int arity, std::string_view text) {
  std::vector<TruthValue> table;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == ',' || c == '/') continue;
    auto v = parse_truth_value(std::string_view(&c, 1));
    if (!v) throw Error(std::string("not a truth value: '") + c + "'");
    table.push_back(*v);
  }
  return TruthFunction(arity, std::move(table));
}

TruthValue TruthFunction::operator()(std::span<const TruthValue> args) const {
  if (static_cast<int>(args.size()) != arity_) throw Error("wrong number of arguments");
  std::size_t index = 0;
  for (TruthValue a : args) index = index * 4 + index_of(a);
  return table_[index];
}

std::uint64_t TruthFunction::code() const {
  std::uint64_t c = 0;
  for (TruthValue v : table_) c = c * 4 + index_of(v);
  return c;
}

std::string TruthFunction::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i > 0 && i % 4 == 0) out += ' ';
    out += to_char(table_[i]);
  }
  return out;
}

TruthFunction named_function(std::string_view name) {
  auto unary = [](auto fn) {
    std::vector<TruthValue> t;
    for (TruthValue a : kAllValues) t.push_back(fn(a));
    return TruthFunction(1, std::move(t));
  };
  auto binary = [](auto fn) {
    std::vector<TruthValue> t;
    for (TruthValue a : kAllValues)
      for (TruthValue b : kAllValues) t.push_back(fn(a, b));
    return TruthFunction(2, std::move(t));
  };
  if (name == "F") return TruthFunction::constant(0, TruthValue::f);
  if (name == "id") return TruthFunction::projection(1, 0);
  if (name == "~") return unary(negate);
  if (name == "&") return binary(meet);
  if (name == "|") return binary(join);
  if (name == "->") return binary(implies);
  auto c = connective_from_name(name);
  if (!c) throw Error("unknown connective '" + std::string(name) + "'");
  if (connective_arity(*c) == 0) return TruthFunction::constant(0, apply_connective(*c));
  return unary([&](TruthValue a) { return apply_connective(*c, a); });
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kSymbolNames[] = {"F",   "~",   "&",    "|",     "->",   "Des",
                                             "Norm", "Cons", "Det", "Confl", "Both", "Neither"};

ConnectiveSet::Symbol symbol_of(Connective c) {
  switch (c) {
    case Connective::Des: return ConnectiveSet::kDes;
    case Connective::Norm: return ConnectiveSet::kNorm;
    case Connective::Cons: return ConnectiveSet::kCons;
    case Connective::Det: return ConnectiveSet::kDet;
    case Connective::Confl: return ConnectiveSet::kConfl;
    case Connective::Both: return ConnectiveSet::kBoth;
    case Connective::Neither: return ConnectiveSet::kNeither;
  }
  return ConnectiveSet::kDes;
}

}  // namespace

ConnectiveSet::ConnectiveSet(std::initializer_list<Symbol> symbols) {
  for (Symbol s : symbols) bits_ |= static_cast<std::uint16_t>(1u << s);
}

ConnectiveSet ConnectiveSet::bd_base() { return {kFalsity, kNeg, kConj, kDisj, kImp}; }

ConnectiveSet ConnectiveSet::parse(std::string_view text) {
  ConnectiveSet out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == ',' || text[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',' && text[j] != '\t') ++j;
    std::string_view word = text.substr(i, j - i);
    auto it = std::find(std::begin(kSymbolNames), std::end(kSymbolNames), word);
    if (it == std::end(kSymbolNames))
      throw Error("unknown connective '" + std::string(word) + "'");
    out = out.with(static_cast<Symbol>(it - std::begin(kSymbolNames)));
    i = j;
  }
  return out;
}

ConnectiveSet ConnectiveSet::with(Symbol s) const {
  ConnectiveSet out = *this;
  out.bits_ |= static_cast<std::uint16_t>(1u << s);
  return out;
}

std::string ConnectiveSet::to_string() const {
  std::string out = "{";
  for (int s = 0; s < kSymbolCount; ++s) {
    if (!contains(static_cast<Symbol>(s))) continue;
    if (out.size() > 1) out += ", ";
    out += kSymbolNames[s];
  }
  return out + "}";
}

std::vector<TruthFunction> ConnectiveSet::functions() const {
  std::vector<TruthFunction> out;
  for (int s = 0; s < kSymbolCount; ++s)
    if (contains(static_cast<Symbol>(s))) out.push_back(named_function(kSymbolNames[s]));
  return out;
}

ConnectiveSet ConnectiveSet::of(const Formula& a) {
  ConnectiveSet out;
  switch (a.op()) {
    case Op::False: out = out.with(kFalsity); break;
    case Op::Prop: break;
    case Op::Not: out = out.with(kNeg); break;
    case Op::And: out = out.with(kConj); break;
    case Op::Or: out = out.with(kDisj); break;
    case Op::Implies: out = out.with(kImp); break;
    case Op::Conn: out = out.with(symbol_of(a.connective())); break;
    default: throw Error("not a propositional formula: " + print_formula(a));
  }
  for (const auto& s : a.subs()) out.bits_ |= of(s).bits_;
  return out;
}

TruthFunction truth_function_of(const Formula& a, const std::vector<std::string>& atoms,
                                const ConnectiveSet& allowed) {
  ConnectiveSet used = ConnectiveSet::of(a);
  if (!allowed.includes(used))
    throw Error(print_formula(a) + " uses connectives outside " + allowed.to_string());
  std::vector<Formula> one = {a};
  for (const auto& p : proposition_symbols(one))
    if (std::find(atoms.begin(), atoms.end(), p) == atoms.end())
      throw Error("atom '" + p + "' is not a parameter");
  const int arity = static_cast<int>(atoms.size());
  CompiledFormula code(a, atoms);
  std::vector<TruthValue> table(table_size(arity));
  TruthValue args[8];
  for (std::size_t k = 0; k < table.size(); ++k) {
    decode(k, arity, args);
    table[k] = code.evaluate(std::span(args, arity));
  }
  return TruthFunction(arity, std::move(table));
}

namespace {

std::vector<std::string> default_params(int arity) {
  std::vector<std::string> params;
  for (int i = 1; i <= arity; ++i) params.push_back("p" + std::to_string(i));
  return params;
}

ConnectiveSet all_symbols() {
  ConnectiveSet out;
  for (int s = 0; s < ConnectiveSet::kSymbolCount; ++s)
    out = out.with(static_cast<ConnectiveSet::Symbol>(s));
  return out;
}

}  // namespace

TruthFunction truth_function_of(const Formula& a, int arity) {
  return truth_function_of(a, default_params(arity), all_symbols());
}

bool is_definable_criterion(const TruthFunction& g) {
  for (ValueSet keep : {kLpValues, kK3Values}) {
    bool ok = true;
    TruthValue args[8];
    for (std::size_t k = 0; k < g.table().size() && ok; ++k) {
      decode(k, g.arity(), args);
      bool inside = std::all_of(args, args + g.arity(), [&](TruthValue v) { return keep.contains(v); });
      if (inside && !keep.contains(g.at(k))) ok = false;
    }
    if (!ok) return false;
  }
  return true;
}

namespace {

TruthFunction compose(const TruthFunction& g, std::span<const TruthFunction* const> parts,
                      int arity) {
  std::vector<TruthValue> table(table_size(arity));
  TruthValue inner[8];
  for (std::size_t k = 0; k < table.size(); ++k) {
    for (int i = 0; i < g.arity(); ++i) inner[i] = parts[i]->at(k);
    table[k] = g(std::span(inner, g.arity()));
  }
  return TruthFunction(arity, std::move(table));
}

}  // namespace

std::vector<TruthFunction> clone_closure(std::span<const TruthFunction> base, int arity,
                                         std::size_t cap) {
  if (arity > 2) throw Error("clone closure is limited to arity 2");
  std::vector<TruthFunction> found;
  std::unordered_set<std::uint64_t> seen;
  auto add = [&](TruthFunction h) {
    if (!seen.insert(h.code()).second) return;
    found.push_back(std::move(h));
    if (found.size() > cap)
      throw Error("clone closure exceeded the cap of " + std::to_string(cap) + " functions");
  };
  for (int i = 0; i < arity; ++i) add(TruthFunction::projection(arity, i));

  std::size_t done = 0;  // tuples drawn entirely below this index were composed already
  bool first = true;
  while (first || done < found.size()) {
    const std::size_t size = found.size();
    for (const TruthFunction& g : base) {
      const int m = g.arity();
      if (m == 0) {
        if (first) add(TruthFunction::constant(arity, g.at(0)));
        continue;
      }
      std::vector<std::size_t> idx(m, 0);
      std::vector<const TruthFunction*> parts(m);
      while (true) {
        bool fresh = first || std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= done; });
        if (fresh && size > 0) {
          for (int i = 0; i < m; ++i) parts[i] = &found[idx[i]];
          add(compose(g, parts, arity));
        }
        int pos = m - 1;
        while (pos >= 0 && ++idx[pos] >= size) idx[pos--] = 0;
        if (pos < 0 || size == 0) break;
      }
    }
    done = size;
    first = false;
  }
  std::sort(found.begin(), found.end(),
            [](const TruthFunction& a, const TruthFunction& b) { return a.code() < b.code(); });
  return found;
}

bool verify_definition(const ConnectiveDef& d, const TruthFunction& target) {
  if (static_cast<int>(d.params.size()) != target.arity())
    throw Error("definition of " + d.name + " has " + std::to_string(d.params.size()) +
                " parameters but the target has arity " + std::to_string(target.arity()));
  return truth_function_of(d.formula, d.params, d.base) == target;
}

namespace {

Formula parse_prop(const std::string& text) {
  Signature sig;
  return parse_formula_infer(text, sig);
}

}  // namespace

std::vector<ConnectiveDef> standard_definitions() {
  const std::pair<const char*, const char*> defs[] = {
      {"Des", "~(p1 -> F)"},
      {"Norm", "((p1 & ~p1) -> F) & ~((p1 | ~p1) -> F)"},
      {"Cons", "(p1 & ~p1) -> F"},
      {"Det", "~((p1 | ~p1) -> F)"},
  };
  std::vector<ConnectiveDef> out;
  for (const auto& [name, text] : defs)
    out.push_back({name, {"p1"}, parse_prop(text), ConnectiveSet::bd_base()});
  return out;
}

EquivalenceCheck compare_tables(const Formula& lhs, const Formula& rhs) {
  std::vector<Formula> both = {lhs, rhs};
  std::vector<std::string> atoms = proposition_symbols(both);
  TruthFunction l = truth_function_of(lhs, atoms, all_symbols());
  TruthFunction r = truth_function_of(rhs, atoms, all_symbols());
  EquivalenceCheck out{print_formula(lhs), print_formula(rhs), l == r, ""};
  if (!out.holds) {
    TruthValue args[8];
    for (std::size_t k = 0; k < l.table().size(); ++k) {
      if (l.at(k) == r.at(k)) continue;
      decode(k, l.arity(), args);
      for (std::size_t i = 0; i < atoms.size(); ++i)
        out.first_difference += atoms[i] + "=" + to_upper_char(args[i]) + " ";
      if (!out.first_difference.empty()) out.first_difference.pop_back();
      out.first_difference += std::string(": ") + to_char(l.at(k)) + " vs " + to_char(r.at(k));
      break;
    }
  }
  return out;
}

std::vector<EquivalenceCheck> check_expansion_equivalences() {
  const std::pair<const char*, const char*> pairs[] = {
      {"Des p", "~(p -> F)"},
      {"p1 -> p2", "~Des p1 | p2"},
      {"F", "Des p & ~Des p"},
      {"Cons p", "~Des (p & ~p)"},
      {"Det p", "Des (p | ~p)"},
      {"Des p", "(p | ~Cons p) & Det p"},
      {"Norm p", "Cons p & Det p"},
      {"F", "Both & Neither"},
  };
  std::vector<EquivalenceCheck> out;
  for (const auto& [lhs, rhs] : pairs) out.push_back(compare_tables(parse_prop(lhs), parse_prop(rhs)));
  return out;
}

std::optional<Formula> find_definition(const TruthFunction& target, const ConnectiveSet& allowed,
                                       int max_connectives) {
  if (target.arity() > 2) throw Error("definition search is limited to arity 2");
  const int arity = target.arity();
  const auto params = default_params(arity);

  struct Entry {
    Formula formula;
    TruthFunction table;
  };
  std::vector<std::vector<Entry>> levels(max_connectives + 1);
  std::unordered_set<std::uint64_t> seen;

  struct Candidate {
    std::string text;
    Formula formula;
    TruthFunction table;
  };
  auto settle = [&](std::vector<Candidate>& cands, int level) -> std::optional<Formula> {
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& a, const Candidate& b) { return a.text < b.text; });
    for (auto& c : cands) {
      if (!seen.insert(c.table.code()).second) continue;
      if (c.table == target) return c.formula;
      levels[level].push_back({c.formula, c.table});
    }
    return std::nullopt;
  };

  std::vector<Candidate> cands;
  for (int i = 0; i < arity; ++i) {
    Formula p = Formula::prop(params[i]);
    cands.push_back({print_formula(p), p, TruthFunction::projection(arity, i)});
  }
  if (auto hit = settle(cands, 0)) return hit;

  using S = ConnectiveSet::Symbol;
  auto fn_of = [](S s) { return named_function(kSymbolNames[s]); };
  auto build_unary = [](S s, const Formula& a) {
    switch (s) {
      case S::kNeg: return Formula::neg(a);
      case S::kDes: return Formula::conn(Connective::Des, {a});
      case S::kNorm: return Formula::conn(Connective::Norm, {a});
      case S::kCons: return Formula::conn(Connective::Cons, {a});
      case S::kDet: return Formula::conn(Connective::Det, {a});
      default: return Formula::conn(Connective::Confl, {a});
    }
  };
  auto build_nullary = [](S s) {
    switch (s) {
      case S::kFalsity: return Formula::falsity();
      case S::kBoth: return Formula::conn(Connective::Both);
      default: return Formula::conn(Connective::Neither);
    }
  };
  auto build_binary = [](S s, const Formula& a, const Formula& b) {
    switch (s) {
      case S::kConj: return Formula::conj(a, b);
      case S::kDisj: return Formula::disj(a, b);
      default: return Formula::implies(a, b);
    }
  };

  for (int level = 1; level <= max_connectives; ++level) {
    cands.clear();
    for (int s = 0; s < ConnectiveSet::kSymbolCount; ++s) {
      S sym = static_cast<S>(s);
      if (!allowed.contains(sym)) continue;
      TruthFunction g = fn_of(sym);
      if (g.arity() == 0) {
        if (level != 1) continue;
        Formula a = build_nullary(sym);
        cands.push_back({print_formula(a), a, TruthFunction::constant(arity, g.at(0))});
      } else if (g.arity() == 1) {
        for (const Entry& e : levels[level - 1]) {
          const TruthFunction* parts[] = {&e.table};
          Formula a = build_unary(sym, e.formula);
          cands.push_back({print_formula(a), a, compose(g, parts, arity)});
        }
      } else {
        for (int left = 0; left <= level - 1; ++left)
          for (const Entry& l : levels[left])
            for (const Entry& r : levels[level - 1 - left]) {
              const TruthFunction* parts[] = {&l.table, &r.table};
              Formula a = build_binary(sym, l.formula, r.formula);
              cands.push_back({print_formula(a), a, compose(g, parts, arity)});
            }
      }
    }
    if (auto hit = settle(cands, level)) return hit;
  }
  return std::nullopt;
}

bool separates_values(std::span<const TruthFunction> unary_clone) {
  for (TruthValue a : kAllValues)
    for (TruthValue b : kAllValues) {
      if (a == b) continue;
      bool split = std::any_of(unary_clone.begin(), unary_clone.end(), [&](const TruthFunction& g) {
        TruthValue x[] = {a}, y[] = {b};
        return designated(g(x)) != designated(g(y));
      });
      if (!split) return false;
    }
  return true;
}

}  // namespace bd4
