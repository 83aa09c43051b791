#include "bd4/matrix_lab.hpp"

#include <algorithm>
#include <functional>

#include "bd4/parser.hpp"
#include "bd4/semantics.hpp"

namespace bd4 {

Matrix4 bd_matrix() {
  Matrix4 m;
  m.falsity = TruthValue::f;
  for (TruthValue a : kAllValues) {
    m.neg[index_of(a)] = negate(a);
    for (TruthValue b : kAllValues) {
      m.conj[index_of(a) * 4 + index_of(b)] = meet(a, b);
      m.disj[index_of(a) * 4 + index_of(b)] = join(a, b);
      m.imp[index_of(a) * 4 + index_of(b)] = implies(a, b);
    }
  }
  m.forall[0] = m.exists[0] = TruthValue::f;
  for (unsigned mask = 1; mask < 16; ++mask) {
    m.forall[mask] = ValueSet(mask).inf();
    m.exists[mask] = ValueSet(mask).sup();
  }
  return m;
}

std::uint32_t pack_table(std::span<const TruthValue> table) {
  std::uint32_t code = 0;
  for (std::size_t i = table.size(); i-- > 0;) code = code * 4 + index_of(table[i]);
  return code;
}

namespace {

std::string letters(std::span<const TruthValue> table) {
  std::string out;
  for (TruthValue v : table) out += to_char(v);
  return out;
}

}  // namespace

std::string describe_matrix(const Matrix4& m) {
  return std::string("F=") + to_char(m.falsity) + " neg=" + letters(m.neg) +
         " conj=" + letters(m.conj) + " disj=" + letters(m.disj) + " imp=" + letters(m.imp) +
         " forall=" + letters(std::span(m.forall).subspan(1)) +
         " exists=" + letters(std::span(m.exists).subspan(1));
}

namespace {

ValueSet designation_class(bool designate) {
  return designate ? kDesignatedValues : ValueSet{TruthValue::n, TruthValue::f};
}

// Values regularity allows for each entry of a slot's table.
ValueSet regular_choices(MatrixSlot slot, int entry) {
  switch (slot) {
    case MatrixSlot::Falsity: return kFourValues;
    case MatrixSlot::Neg: {
      TruthValue a = value_at(entry);
      return designation_class(a == TruthValue::f || a == TruthValue::b);
    }
    case MatrixSlot::Conj:
      return designation_class(designated(value_at(entry / 4)) && designated(value_at(entry % 4)));
    case MatrixSlot::Disj:
      return designation_class(designated(value_at(entry / 4)) || designated(value_at(entry % 4)));
    case MatrixSlot::Imp:
      return designation_class(!designated(value_at(entry / 4)) || designated(value_at(entry % 4)));
    case MatrixSlot::Forall:
      return designation_class(ValueSet(entry).subset_of(kDesignatedValues));
    case MatrixSlot::Exists:
      return designation_class((entry & kDesignatedValues.bits()) != 0);
  }
  return kFourValues;
}

bool classical_arguments(MatrixSlot slot, int entry) {
  switch (slot) {
    case MatrixSlot::Falsity: return true;
    case MatrixSlot::Neg: return classical(value_at(entry));
    case MatrixSlot::Conj:
    case MatrixSlot::Disj:
    case MatrixSlot::Imp: return classical(value_at(entry / 4)) && classical(value_at(entry % 4));
    case MatrixSlot::Forall:
    case MatrixSlot::Exists: return ValueSet(entry).subset_of(kClassicalValues);
  }
  return false;
}

int table_length(MatrixSlot slot) {
  switch (slot) {
    case MatrixSlot::Falsity: return 1;
    case MatrixSlot::Neg: return 4;
    default: return 16;
  }
}

bool is_quantifier_slot(MatrixSlot slot) {
  return slot == MatrixSlot::Forall || slot == MatrixSlot::Exists;
}

std::span<const TruthValue> slot_table(const Matrix4& m, MatrixSlot slot) {
  switch (slot) {
    case MatrixSlot::Falsity: return std::span(&m.falsity, 1);
    case MatrixSlot::Neg: return m.neg;
    case MatrixSlot::Conj: return m.conj;
    case MatrixSlot::Disj: return m.disj;
    case MatrixSlot::Imp: return m.imp;
    case MatrixSlot::Forall: return m.forall;
    case MatrixSlot::Exists: return m.exists;
  }
  return {};
}

void set_slot(Matrix4& m, MatrixSlot slot, const std::vector<TruthValue>& table) {
  switch (slot) {
    case MatrixSlot::Falsity: m.falsity = table[0]; break;
    case MatrixSlot::Neg: std::copy(table.begin(), table.end(), m.neg.begin()); break;
    case MatrixSlot::Conj: std::copy(table.begin(), table.end(), m.conj.begin()); break;
    case MatrixSlot::Disj: std::copy(table.begin(), table.end(), m.disj.begin()); break;
    case MatrixSlot::Imp: std::copy(table.begin(), table.end(), m.imp.begin()); break;
    case MatrixSlot::Forall: std::copy(table.begin(), table.end(), m.forall.begin()); break;
    case MatrixSlot::Exists: std::copy(table.begin(), table.end(), m.exists.begin()); break;
  }
}

constexpr std::array<MatrixSlot, kSlotCount> kSlots = {
    MatrixSlot::Falsity, MatrixSlot::Neg,    MatrixSlot::Conj,  MatrixSlot::Disj,
    MatrixSlot::Imp,     MatrixSlot::Forall, MatrixSlot::Exists};

}  // namespace

std::string_view slot_name(MatrixSlot s) {
  switch (s) {
    case MatrixSlot::Falsity: return "F";
    case MatrixSlot::Neg: return "neg";
    case MatrixSlot::Conj: return "conj";
    case MatrixSlot::Disj: return "disj";
    case MatrixSlot::Imp: return "imp";
    case MatrixSlot::Forall: return "forall";
    case MatrixSlot::Exists: return "exists";
  }
  return "?";
}

bool is_regular(const Matrix4& m) {
  for (MatrixSlot slot : kSlots) {
    auto table = slot_table(m, slot);
    for (int e = is_quantifier_slot(slot) ? 1 : 0; e < table_length(slot); ++e)
      if (!regular_choices(slot, e).contains(table[e])) return false;
  }
  return true;
}

bool is_classically_closed(const Matrix4& m) {
  for (MatrixSlot slot : kSlots) {
    auto table = slot_table(m, slot);
    for (int e = is_quantifier_slot(slot) ? 1 : 0; e < table_length(slot); ++e)
      if (classical_arguments(slot, e) && !classical(table[e])) return false;
  }
  return true;
}

std::vector<std::vector<TruthValue>> enumerate_candidates(MatrixSlot slot) {
  const int length = table_length(slot);
  std::vector<std::vector<TruthValue>> options(length);
  for (int e = 0; e < length; ++e) {
    if (is_quantifier_slot(slot) && e == 0) {
      options[e] = {TruthValue::f};
      continue;
    }
    ValueSet allowed = regular_choices(slot, e);
    if (classical_arguments(slot, e))
      allowed = ValueSet(static_cast<std::uint8_t>(allowed.bits() & kClassicalValues.bits()));
    allowed.for_each([&](TruthValue v) { options[e].push_back(v); });
  }
  std::vector<std::vector<TruthValue>> out;
  std::vector<TruthValue> table(length);
  std::function<void(int)> fill = [&](int e) {
    if (e == length) {
      out.push_back(table);
      return;
    }
    for (TruthValue v : options[e]) {
      table[e] = v;
      fill(e + 1);
    }
  };
  fill(0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return pack_table(a) < pack_table(b);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation under an arbitrary matrix

namespace {

TruthValue eval_tree(const Matrix4& m, const Formula& a, const std::vector<std::string>& atoms,
                     std::span<const TruthValue> values) {
  switch (a.op()) {
    case Op::False: return m.falsity;
    case Op::Prop: {
      auto it = std::find(atoms.begin(), atoms.end(), a.name());
      if (it == atoms.end()) throw Error("no value for '" + a.name() + "'");
      return values[it - atoms.begin()];
    }
    case Op::Not: return m.apply_neg(eval_tree(m, a.sub(), atoms, values));
    case Op::And:
      return m.apply_conj(eval_tree(m, a.sub(0), atoms, values), eval_tree(m, a.sub(1), atoms, values));
    case Op::Or:
      return m.apply_disj(eval_tree(m, a.sub(0), atoms, values), eval_tree(m, a.sub(1), atoms, values));
    case Op::Implies:
      return m.apply_imp(eval_tree(m, a.sub(0), atoms, values), eval_tree(m, a.sub(1), atoms, values));
    default:
      throw Error("formula outside the matrix language: " + print_formula(a));
  }
}

// Postfix code of a law side with metavariables numbered.
struct LawCode {
  struct Instr {
    Op op;
    int var;
  };
  std::vector<Instr> code;

  LawCode(const Formula& a, const std::vector<std::string>& vars) {
    auto emit = [&](auto&& self, const Formula& e) -> void {
      for (const auto& s : e.subs()) self(self, s);
      int var = -1;
      if (e.op() == Op::Prop)
        var = static_cast<int>(std::find(vars.begin(), vars.end(), e.name()) - vars.begin());
      code.push_back({e.op(), var});
    };
    emit(emit, a);
  }

  TruthValue run(const Matrix4& m, std::span<const TruthValue> values) const {
    TruthValue stack[16];
    int top = 0;
    for (const Instr& ins : code) {
      switch (ins.op) {
        case Op::False: stack[top++] = m.falsity; break;
        case Op::Prop: stack[top++] = values[ins.var]; break;
        case Op::Not: stack[top - 1] = m.apply_neg(stack[top - 1]); break;
        case Op::And: --top; stack[top - 1] = m.apply_conj(stack[top - 1], stack[top]); break;
        case Op::Or: --top; stack[top - 1] = m.apply_disj(stack[top - 1], stack[top]); break;
        case Op::Implies: --top; stack[top - 1] = m.apply_imp(stack[top - 1], stack[top]); break;
        default: break;
      }
    }
    return stack[0];
  }
};

std::uint8_t slots_of(const Formula& a) {
  std::uint8_t bits = 0;
  auto mark = [&](MatrixSlot s) { bits |= static_cast<std::uint8_t>(1u << static_cast<int>(s)); };
  switch (a.op()) {
    case Op::False: mark(MatrixSlot::Falsity); break;
    case Op::Not: mark(MatrixSlot::Neg); break;
    case Op::And: mark(MatrixSlot::Conj); break;
    case Op::Or: mark(MatrixSlot::Disj); break;
    case Op::Implies: mark(MatrixSlot::Imp); break;
    default: break;
  }
  for (const auto& s : a.subs()) bits |= slots_of(s);
  return bits;
}

struct CompiledLaw {
  LawInstance instance;
  std::vector<std::string> vars;
  std::vector<LawCode> sides;  // propositional laws only
};

Formula parse_schema(const std::string& text) {
  Signature sig;
  return parse_formula_infer(text, sig);
}

std::vector<CompiledLaw> build_laws() {
  const std::pair<const char*, const char*> propositional[] = {
      {"A & F", "F"},
      {"A | T", "T"},
      {"A & T", "A"},
      {"A | F", "A"},
      {"A & A", "A"},
      {"A | A", "A"},
      {"A1 & A2", "A2 & A1"},
      {"A1 | A2", "A2 | A1"},
      {"~(A1 & A2)", "~A1 | ~A2"},
      {"~(A1 | A2)", "~A1 & ~A2"},
      {"~~A", "A"},
      {"A1 & (A1 -> F) -> A2", "T"},
      {"A1 | (A1 -> F) -> A2", "A2"},
  };
  std::vector<CompiledLaw> laws;
  int id = 1;
  for (const auto& [lhs, rhs] : propositional) {
    Formula l = parse_schema(lhs), r = parse_schema(rhs);
    std::vector<Formula> both = {l, r};
    CompiledLaw law{{id++, lhs, rhs, false, static_cast<std::uint8_t>(slots_of(l) | slots_of(r))},
                    proposition_symbols(both),
                    {}};
    law.sides.emplace_back(l, law.vars);
    law.sides.emplace_back(r, law.vars);
    laws.push_back(std::move(law));
  }
  auto bit = [](MatrixSlot s) { return static_cast<std::uint8_t>(1u << static_cast<int>(s)); };
  laws.push_back({{14, "forall x. A1 & A2", "(forall x. A1) & A2", true,
                   static_cast<std::uint8_t>(bit(MatrixSlot::Forall) | bit(MatrixSlot::Conj))},
                  {},
                  {}});
  laws.push_back({{15, "exists x. A1 | A2", "(exists x. A1) | A2", true,
                   static_cast<std::uint8_t>(bit(MatrixSlot::Exists) | bit(MatrixSlot::Disj))},
                  {},
                  {}});
  return laws;
}

const std::vector<CompiledLaw>& compiled_laws() {
  static const std::vector<CompiledLaw> laws = build_laws();
  return laws;
}

std::string value_witness(const std::vector<std::string>& vars, std::span<const TruthValue> values) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i > 0) out += ' ';
    out += vars[i] + "=" + to_upper_char(values[i]);
  }
  return out;
}

LawCheck check_compiled(const Matrix4& m, const CompiledLaw& law) {
  LawCheck result{true, ""};
  if (!law.instance.quantified) {
    for_each_valuation(static_cast<int>(law.vars.size()), kFourValues,
                       [&](std::span<const TruthValue> values) {
                         if (law.sides[0].run(m, values) == law.sides[1].run(m, values)) return true;
                         result = {false, value_witness(law.vars, values)};
                         return false;
                       });
    return result;
  }
  const bool universal = law.instance.id == 14;
  for (unsigned mask = 1; mask < 16; ++mask) {
    ValueSet v(static_cast<std::uint8_t>(mask));
    for (TruthValue a2 : kEnumerationOrder) {
      ValueSet image;
      v.for_each([&](TruthValue x) {
        image = image.insert(universal ? m.apply_conj(x, a2) : m.apply_disj(x, a2));
      });
      TruthValue lhs = universal ? m.apply_forall(image) : m.apply_exists(image);
      TruthValue rhs = universal ? m.apply_conj(m.apply_forall(v), a2)
                                 : m.apply_disj(m.apply_exists(v), a2);
      if (lhs != rhs) return {false, "V=" + v.to_string() + " A2=" + to_upper_char(a2)};
    }
  }
  return result;
}

}  // namespace

TruthValue evaluate_in(const Matrix4& m, const Formula& a, const std::vector<std::string>& atoms,
                       std::span<const TruthValue> values) {
  return eval_tree(m, a, atoms, values);
}

const std::vector<LawInstance>& distinguishing_laws() {
  static const std::vector<LawInstance> laws = [] {
    std::vector<LawInstance> out;
    for (const auto& l : compiled_laws()) out.push_back(l.instance);
    return out;
  }();
  return laws;
}

const LawInstance& law(int id) {
  if (id < 1 || id > 15) throw Error("law ids run from 1 to 15, got " + std::to_string(id));
  return distinguishing_laws()[id - 1];
}

LawCheck check_law(const Matrix4& m, const LawInstance& instance) {
  if (instance.id < 1 || instance.id > 15) throw Error("unknown law id");
  const CompiledLaw& compiled = compiled_laws()[instance.id - 1];
  if (compiled.instance.lhs != instance.lhs || compiled.instance.rhs != instance.rhs)
    throw Error("law instance does not match law " + std::to_string(instance.id));
  return check_compiled(m, compiled);
}

// ---------------------------------------------------------------------------
// Uniqueness search

namespace {

int stage_of(const LawInstance& l) {
  int stage = 0;
  for (int s = 0; s < kSlotCount; ++s)
    if (l.uses(static_cast<MatrixSlot>(s))) stage = s;
  return stage;
}

class Search {
 public:
  explicit Search(const UniquenessOptions& options) : options_(options) {
    std::vector<int> order = options.law_order;
    if (order.empty())
      for (int id = 1; id <= 15; ++id) order.push_back(id);
    for (int id : order) {
      if (id < 1 || id > 15) throw Error("unknown law id " + std::to_string(id));
      if (options.dropped.contains(id)) continue;
      const CompiledLaw& l = compiled_laws()[id - 1];
      stage_laws_[stage_of(l.instance)].push_back(&l);
    }
    for (int s = 0; s < kSlotCount; ++s) {
      candidates_[s] = enumerate_candidates(kSlots[s]);
      result_.stages.push_back({kSlots[s], candidates_[s].size(), 0, 0, {}});
      for (const CompiledLaw* l : stage_laws_[s]) result_.stages[s].laws.push_back(l->instance.id);
    }
    // A slot is independent when no law at a later stage mentions it.
    for (int s = 0; s < kSlotCount; ++s) {
      independent_[s] = true;
      for (int later = s + 1; later < kSlotCount; ++later)
        for (const CompiledLaw* l : stage_laws_[later])
          if (l->instance.uses(kSlots[s])) independent_[s] = false;
    }
  }

  UniquenessResult run() {
    result_.survivors = explore(0);
    return std::move(result_);
  }

 private:
  std::uint64_t explore(int stage) {
    std::vector<const std::vector<TruthValue>*> passing;
    for (const auto& table : candidates_[stage]) {
      set_slot(m_, kSlots[stage], table);
      bool ok = true;
      for (const CompiledLaw* l : stage_laws_[stage])
        if (!check_compiled(m_, *l).holds) {
          ok = false;
          break;
        }
      if (ok) passing.push_back(&table);
    }
    auto& report = result_.stages[stage];
    report.examined += candidates_[stage].size();
    report.surviving += passing.size();
    if (passing.empty()) return 0;
    if (stage == kSlotCount - 1) {
      for (const auto* table : passing) {
        if (result_.matrices.size() >= options_.keep) break;
        set_slot(m_, kSlots[stage], *table);
        result_.matrices.push_back(m_);
      }
      return passing.size();
    }
    if (independent_[stage]) {
      set_slot(m_, kSlots[stage], *passing.front());
      return passing.size() * explore(stage + 1);
    }
    std::uint64_t total = 0;
    for (const auto* table : passing) {
      set_slot(m_, kSlots[stage], *table);
      total += explore(stage + 1);
    }
    return total;
  }

  const UniquenessOptions& options_;
  std::array<std::vector<const CompiledLaw*>, kSlotCount> stage_laws_;
  std::array<std::vector<std::vector<TruthValue>>, kSlotCount> candidates_;
  std::array<bool, kSlotCount> independent_{};
  Matrix4 m_;
  UniquenessResult result_;
};

}  // namespace

UniquenessResult uniqueness_search(const UniquenessOptions& options) {
  return Search(options).run();
}

std::vector<ClassicalLawReport> check_classical_failures(const Matrix4& m) {
  const std::pair<const char*, const char*> laws[] = {
      {"~A", "A -> F"}, {"A & ~A", "F"}, {"A | ~A", "T"}, {"F -> A", "T"}, {"T -> A", "A"}};
  std::vector<ClassicalLawReport> out;
  const std::vector<std::string> vars = {"A"};
  for (const auto& [lhs, rhs] : laws) {
    Formula l = parse_schema(lhs), r = parse_schema(rhs);
    ClassicalLawReport report{std::string(lhs) + " == " + rhs, true, ""};
    for (TruthValue a : kEnumerationOrder) {
      TruthValue v[] = {a};
      if (evaluate_in(m, l, vars, v) != evaluate_in(m, r, vars, v)) {
        report.holds = false;
        report.witness = std::string("A=") + to_upper_char(a);
        break;
      }
    }
    out.push_back(report);
  }
  return out;
}

}  // namespace bd4
