#include "bd4/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "bd4/corpus.hpp"
#include "bd4/definability.hpp"
#include "bd4/generators.hpp"
#include "bd4/kernel.hpp"
#include "bd4/matrix_lab.hpp"
#include "bd4/parser.hpp"
#include "bd4/proof_search.hpp"
#include "bd4/reference_tables.hpp"
#include "bd4/rule_instances.hpp"
#include "bd4/semantics.hpp"
#include "bd4/simulation.hpp"

namespace bd4 {

namespace {

using Status = CriterionResult::Status;

// Collects facts and failures for one criterion.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void fact(const std::string& text) { facts_.push_back(text); }
  bool ok() const { return failures_.empty(); }

  std::string detail() const {
    std::string out;
    for (const auto& f : facts_) out += (out.empty() ? "" : " ") + f;
    for (std::size_t i = 0; i < failures_.size() && i < 5; ++i)
      out += (out.empty() ? "FAILED: " : (i == 0 ? " FAILED: " : "; ")) + failures_[i];
    if (failures_.size() > 5) out += "; ... " + std::to_string(failures_.size() - 5) + " more";
    return out;
  }

 private:
  std::vector<std::string> facts_;
  std::vector<std::string> failures_;
};

std::string kv(const std::string& key, std::uint64_t value) { return key + "=" + std::to_string(value); }

std::vector<Formula> parse_list(std::string_view text) {
  Signature sig;
  Sequent s = parse_sequent_infer(std::string(text) + " =>", sig);
  return {s.antecedent.begin(), s.antecedent.end()};
}

// ---------------------------------------------------------------------------
// Small-sequent enumeration: all Gamma |- Delta with |Gamma| + |Delta| <= 2,
// or with both sides of size <= 2 when `both_sides` is set.

std::uint64_t small_sequent_count(std::uint64_t n, bool both_sides) {
  if (both_sides) {
    std::uint64_t sets = 1 + n + n * (n - 1) / 2;
    return sets * sets;
  }
  return 1 + 2 * n + n * (n - 1) + n * n;
}

// fn(gamma indices, delta indices) returning false stops the walk.
template <typename Fn>
void for_each_small_sequent(int n, bool both_sides, Fn&& fn) {
  std::vector<std::vector<int>> sets = {{}};
  for (int i = 0; i < n; ++i) sets.push_back({i});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sets.push_back({i, j});
  if (both_sides) {
    for (const auto& g : sets)
      for (const auto& d : sets)
        if (!fn(g, d)) return;
    return;
  }
  for (const auto& s : sets) {
    if (!fn(s, std::vector<int>{})) return;
    if (!s.empty() && !fn(std::vector<int>{}, s)) return;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!fn(std::vector<int>{i}, std::vector<int>{j})) return;
}

Sequent sequent_of(const std::vector<Formula>& formulas, const std::vector<int>& g,
                   const std::vector<int>& d) {
  std::vector<Formula> l, r;
  for (int i : g) l.push_back(formulas[i]);
  for (int i : d) r.push_back(formulas[i]);
  return Sequent(std::move(l), std::move(r));
}

std::string show(const Sequent& s) { return print_sequent(s, ", ", " => "); }

// ---------------------------------------------------------------------------
// 1. Matrix fidelity

CriterionResult matrix_fidelity(const AcceptanceConfig&) {
  Tally t;
  Matrix4 m = bd_matrix();
  namespace ref = reference;
  int entries = 0, subsets = 0;
  auto same = [&](TruthValue got, TruthValue want, const std::string& where) {
    ++entries;
    t.require(got == want, where + " is " + to_char(got) + ", expected " + to_char(want));
  };
  same(m.falsity, ref::kFalsity, "F");
  for (int a = 0; a < 4; ++a) {
    TruthValue va = value_at(a);
    same(m.neg[a], ref::kNegation[a], std::string("~") + to_char(va));
    t.require(m.neg[a] == negate(va), "lattice negation disagrees at " + std::string(1, to_char(va)));
    for (int b = 0; b < 4; ++b) {
      TruthValue vb = value_at(b);
      std::string args = std::string("(") + to_char(va) + "," + to_char(vb) + ")";
      same(m.conj[a * 4 + b], ref::kConjunction[a][b], "&" + args);
      same(m.disj[a * 4 + b], ref::kDisjunction[a][b], "|" + args);
      same(m.imp[a * 4 + b], ref::kImplication[a][b], "->" + args);
      t.require(m.conj[a * 4 + b] == meet(va, vb) && m.disj[a * 4 + b] == join(va, vb) &&
                    m.imp[a * 4 + b] == implies(va, vb),
                "lattice operations disagree at " + args);
    }
  }
  for (unsigned mask = 1; mask < 16; ++mask) {
    ++subsets;
    ValueSet v(static_cast<std::uint8_t>(mask));
    t.require(m.forall[mask] == ref::infimum(mask) && m.forall[mask] == v.inf(),
              "forall" + v.to_string() + " is not the infimum");
    t.require(m.exists[mask] == ref::supremum(mask) && m.exists[mask] == v.sup(),
              "exists" + v.to_string() + " is not the supremum");
  }
  t.fact(kv("entries", entries));
  t.fact(kv("quantifier_sets", subsets));
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 2. The fifteen laws

CriterionResult laws(const AcceptanceConfig&) {
  Tally t;
  Matrix4 m = bd_matrix();
  int holding = 0;
  for (const auto& law : distinguishing_laws()) {
    LawCheck c = check_law(m, law);
    holding += c.holds;
    t.require(c.holds, "law " + std::to_string(law.id) + " fails at " + c.witness);
  }
  t.fact(kv("laws", distinguishing_laws().size()));
  t.fact(kv("holding", holding));
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 3. Classical laws that fail

CriterionResult classical_failures(const AcceptanceConfig&) {
  Tally t;
  const std::set<std::string> must_fail = {"~A == A -> F", "A & ~A == F", "A | ~A == T"};
  int failing = 0;
  for (const auto& r : check_classical_failures(bd_matrix())) {
    if (!r.holds) {
      ++failing;
      t.fact("[" + r.law + "] fails at " + r.witness + ";");
    } else {
      t.fact("[" + r.law + "] holds;");
    }
    if (must_fail.count(r.law)) t.require(!r.holds && !r.witness.empty(), r.law + " has no countervaluation");
  }
  t.fact(kv("failing", failing) + "/5");
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 4. Uniqueness of the matrix

CriterionResult uniqueness(const AcceptanceConfig& config) {
  Tally t;
  UniquenessOptions options;
  options.dropped = config.dropped_laws;
  double slowest = 0;
  auto timed_search = [&](const UniquenessOptions& o) {
    auto start = std::chrono::steady_clock::now();
    UniquenessResult r = uniqueness_search(o);
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return r;
  };
  UniquenessResult r = timed_search(options);

  const std::array<std::pair<MatrixSlot, std::size_t>, 6> expected = {{
      {MatrixSlot::Neg, 4}, {MatrixSlot::Conj, 4096}, {MatrixSlot::Disj, 4096},
      {MatrixSlot::Imp, 4096}, {MatrixSlot::Forall, 4096}, {MatrixSlot::Exists, 4096}}};
  std::string counts;
  for (const auto& [slot, n] : expected) {
    for (const auto& s : r.stages) {
      if (s.slot != slot) continue;
      counts += std::string(counts.empty() ? "" : ",") + std::string(slot_name(slot)) + ":" +
                std::to_string(s.candidates);
      t.require(s.candidates == n, std::string(slot_name(slot)) + " has " + std::to_string(s.candidates) +
                                       " candidates, expected " + std::to_string(n));
    }
  }
  t.fact("candidates=" + counts);
  if (!config.dropped_laws.empty()) {
    std::string dropped;
    for (int id : config.dropped_laws) dropped += (dropped.empty() ? "" : ",") + std::to_string(id);
    t.fact("dropped=" + dropped);
  }
  t.fact(kv("survivors", r.survivors));
  t.require(r.survivors == 1, "expected exactly one surviving matrix, found " + std::to_string(r.survivors));
  if (r.survivors == 1) t.require(r.matrices.size() == 1 && r.matrices[0] == bd_matrix(), "the survivor is not BD");

  std::string drops;
  int above_one = 0;
  for (int id = 1; id <= 15; ++id) {
    UniquenessOptions o;
    o.dropped = config.dropped_laws;
    o.dropped.insert(id);
    o.keep = 0;
    std::uint64_t n = timed_search(o).survivors;
    drops += (drops.empty() ? "" : ",") + std::to_string(n);
    above_one += n > 1;
    t.require(n > 1, "dropping law " + std::to_string(id) + " leaves " + std::to_string(n));
  }
  t.fact("drop_survivors=" + drops);
  t.fact(kv("drops_above_one", above_one) + "/15");
  char buf[64];
  std::snprintf(buf, sizeof buf, "a uniqueness run took %.1fs", slowest);
  t.require(slowest < 10, buf);
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 5. Regularity and the consequence witnesses

CriterionResult regularity(const AcceptanceConfig&) {
  Tally t;
  Matrix4 m = bd_matrix();
  t.require(is_regular(m), "matrix is not regular");
  t.require(is_classically_closed(m), "matrix is not classically closed");

  PropResult r = consequence_prop(parse_list("p, ~p"), parse_list("q"));
  t.require(!r.holds && r.witness && r.witness->at("p") == TruthValue::b, "p, ~p |= q without witness p=B");
  if (r.witness) t.fact("explosion_witness=" + r.witness->to_string());
  t.require(consequence_prop(parse_list("p"), parse_list("p | ~p")).holds, "p |= p | ~p fails");
  t.require(consequence_prop(parse_list("~p"), parse_list("p | ~p")).holds, "~p |= p | ~p fails");
  r = consequence_prop({}, parse_list("p | ~p"));
  t.require(!r.holds && r.witness && r.witness->at("p") == TruthValue::n, "|= p | ~p without witness p=N");
  if (r.witness) t.fact("excluded_middle_witness=" + r.witness->to_string());
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 6. Simulation

// Precomputed designation masks over the 16 valuations of p, q.
struct MaskTable {
  std::vector<std::uint16_t> designated;  // per formula
  std::vector<std::uint8_t> atoms;        // bit 0: p, bit 1: q, bit 2: F
  std::array<std::uint16_t, 3> lp_gen{}, k3_gen{};
  std::uint16_t lp_mode = 0, k3_mode = 0, cl_mode = 0;
};

std::uint16_t mask_of(const Formula& a, const std::vector<std::string>& atoms) {
  CompiledFormula c(a, atoms);
  std::uint16_t mask = 0;
  for (int i = 0; i < 16; ++i) {
    std::array<TruthValue, 2> v = {value_at(i / 4), value_at(i % 4)};
    if (designated(c.evaluate(v))) mask |= static_cast<std::uint16_t>(1u << i);
  }
  return mask;
}

MaskTable make_masks(const std::vector<Formula>& formulas) {
  const std::vector<std::string> atoms = {"p", "q"};
  MaskTable mt;
  const std::array<Formula, 3> atomic = {Formula::prop("p"), Formula::prop("q"), Formula::falsity()};
  for (const auto& a : formulas) {
    mt.designated.push_back(mask_of(a, atoms));
    std::uint8_t bits = 0;
    for (const auto& b : atomic_subformulas(std::vector<Formula>{a}))
      for (int k = 0; k < 3; ++k)
        if (b == atomic[k]) bits |= static_cast<std::uint8_t>(1u << k);
    mt.atoms.push_back(bits);
  }
  for (int k = 0; k < 3; ++k) {
    mt.lp_gen[k] = mask_of(lp_generator(atomic[k]), atoms);
    mt.k3_gen[k] = mask_of(k3_generator(atomic[k]), atoms);
  }
  for (int i = 0; i < 16; ++i) {
    TruthValue a = value_at(i / 4), b = value_at(i % 4);
    auto bit = static_cast<std::uint16_t>(1u << i);
    if (kLpValues.contains(a) && kLpValues.contains(b)) mt.lp_mode |= bit;
    if (kK3Values.contains(a) && kK3Values.contains(b)) mt.k3_mode |= bit;
    if (kClassicalValues.contains(a) && kClassicalValues.contains(b)) mt.cl_mode |= bit;
  }
  return mt;
}

CriterionResult simulation(const AcceptanceConfig& config) {
  Tally t;
  const auto formulas = enumerate_prop_formulas({"p", "q"}, 2);
  const MaskTable mt = make_masks(formulas);
  const int n = static_cast<int>(formulas.size());
  const std::array<ExtensionMode, 3> modes = {ExtensionMode::LP, ExtensionMode::K3, ExtensionMode::CL};

  std::uint64_t exhaustive = 0, biconditional_failures = 0, inclusion_failures = 0, cross_checked = 0,
                cross_mismatches = 0;
  for_each_small_sequent(n, false, [&](const std::vector<int>& g, const std::vector<int>& d) {
    std::uint16_t gamma = 0xFFFF, delta = 0;
    std::uint8_t atoms = 0;
    for (int i : g) {
      gamma &= mt.designated[i];
      atoms |= mt.atoms[i];
    }
    for (int i : d) {
      delta |= mt.designated[i];
      atoms |= mt.atoms[i];
    }
    const std::uint16_t counter = gamma & static_cast<std::uint16_t>(~delta);
    const bool bd = counter == 0;
    const bool cross = exhaustive % 997 == 0;
    for (ExtensionMode m : modes) {
      std::uint16_t mode = m == ExtensionMode::LP ? mt.lp_mode : m == ExtensionMode::K3 ? mt.k3_mode : mt.cl_mode;
      std::uint16_t translation = 0xFFFF;
      for (int k = 0; k < 3; ++k) {
        if (!((atoms >> k) & 1u)) continue;
        if (m != ExtensionMode::K3) translation &= mt.lp_gen[k];
        if (m != ExtensionMode::LP) translation &= mt.k3_gen[k];
      }
      const bool in_mode = (counter & mode) == 0;
      const bool translated = (counter & translation) == 0;
      if (in_mode != translated) {
        if (biconditional_failures++ < 3) t.require(false, std::string(mode_name(m)) + " " + show(sequent_of(formulas, g, d)));
      }
      if (bd && !in_mode) ++inclusion_failures;
      if (cross) {
        Sequent s = sequent_of(formulas, g, d);
        SimulationCheck c = verify_simulation(s.antecedent, s.succedent, m);
        ++cross_checked;
        if (c.mode_holds != in_mode || c.translated_holds != translated || c.bd_holds != bd) ++cross_mismatches;
      }
    }
    ++exhaustive;
    return true;
  });
  t.require(biconditional_failures == 0, kv("biconditional_failures", biconditional_failures));
  t.require(inclusion_failures == 0, kv("inclusion_failures", inclusion_failures));
  t.require(cross_mismatches == 0, kv("cross_check_mismatches", cross_mismatches));

  Rng rng(config.seed ^ 0x51u);
  PropGenOptions options;
  options.atoms = {"p", "q", "r"};
  options.max_depth = 4;
  std::uint64_t random_failures = 0;
  for (int i = 0; i < config.random_instances; ++i) {
    std::vector<Formula> gamma, delta;
    for (int k = uniform(rng, 0, 3); k > 0; --k) gamma.push_back(random_prop_formula(rng, options));
    for (int k = uniform(rng, 1, 3); k > 0; --k) delta.push_back(random_prop_formula(rng, options));
    for (ExtensionMode m : modes) {
      SimulationCheck c = verify_simulation(gamma, delta, m);
      if (!c.agrees() || !c.inclusion()) {
        if (random_failures++ < 3)
          t.require(false, std::string(mode_name(m)) + " " + show(Sequent(gamma, delta)));
      }
    }
  }
  t.fact(kv("exhaustive_sequents", exhaustive));
  t.fact(kv("cross_checked", cross_checked));
  t.fact(kv("random_instances", config.random_instances));
  t.fact(kv("random_failures", random_failures));
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 7. Definability

CriterionResult definability(const AcceptanceConfig&) {
  Tally t;
  for (const auto& def : standard_definitions()) {
    bool ok = verify_definition(def, named_function(def.name));
    t.require(ok, def.name + " definition does not match its table");
  }
  t.require(!is_definable_criterion(named_function("Confl")), "conflation passes the criterion");

  std::vector<TruthFunction> base = ConnectiveSet::bd_base().functions();
  std::vector<TruthFunction> clone = clone_closure(base, 1);
  std::set<std::uint64_t> in_clone;
  for (const auto& f : clone) in_clone.insert(f.code());
  // Brute force over all 256 unary functions with the criterion checked by
  // hand, independently of is_definable_criterion.
  int criterion_count = 0, disagreements = 0;
  for (int code = 0; code < 256; ++code) {
    std::vector<TruthValue> table(4);
    for (int i = 0; i < 4; ++i) table[i] = value_at((code >> (2 * i)) & 3);
    TruthFunction g(1, table);
    auto at = [&](TruthValue v) { return table[index_of(v)]; };
    bool keeps_lp = kLpValues.contains(at(TruthValue::t)) && kLpValues.contains(at(TruthValue::f)) &&
                    kLpValues.contains(at(TruthValue::b));
    bool keeps_k3 = kK3Values.contains(at(TruthValue::t)) && kK3Values.contains(at(TruthValue::f)) &&
                    kK3Values.contains(at(TruthValue::n));
    bool satisfies = keeps_lp && keeps_k3;
    criterion_count += satisfies;
    if (satisfies != static_cast<bool>(in_clone.count(g.code()))) ++disagreements;
    if (satisfies != is_definable_criterion(g)) ++disagreements;
  }
  t.fact(kv("unary_clone", clone.size()));
  t.fact(kv("criterion_functions", criterion_count));
  t.require(clone.size() == 36, "unary clone has " + std::to_string(clone.size()) + " elements");
  t.require(disagreements == 0, kv("clone_criterion_disagreements", disagreements));

  ConnectiveSet with_norm{ConnectiveSet::kNeg, ConnectiveSet::kConj, ConnectiveSet::kDisj, ConnectiveSet::kNorm};
  std::vector<TruthFunction> norm_base = with_norm.functions();
  std::vector<TruthFunction> norm_clone = clone_closure(norm_base, 1);
  std::set<std::uint64_t> norm_codes;
  for (const auto& f : norm_clone) norm_codes.insert(f.code());
  t.fact(kv("norm_clone", norm_clone.size()));
  t.require(!norm_codes.count(named_function("Cons").code()), "Cons is in the clone of ~ & | Norm");
  t.require(!norm_codes.count(named_function("Det").code()), "Det is in the clone of ~ & | Norm");
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 8. Expansion equivalences

CriterionResult expansion_equivalences(const AcceptanceConfig&) {
  Tally t;
  int holding = 0;
  auto checks = check_expansion_equivalences();
  bool saw_both_neither = false;
  for (const auto& c : checks) {
    holding += c.holds;
    t.require(c.holds, c.lhs + " vs " + c.rhs + " differ at " + c.first_difference);
    if (c.rhs == "Both & Neither") saw_both_neither = true;
  }
  t.require(saw_both_neither, "F vs Both & Neither not checked");
  t.fact(kv("equivalences", checks.size()));
  t.fact(kv("holding", holding));
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 9. Proof kernel

CriterionResult proof_kernel(const AcceptanceConfig&) {
  Tally t;
  std::set<Rule> used;
  for (const auto& entry : proof_corpus()) {
    CheckResult r = check_text(entry.text);
    t.require(r.ok, entry.name + ": " + r.message);
    if (r.ok)
      for (const auto& s : parse_derivation(entry.text).steps) used.insert(s.rule);
  }
  int base_covered = 0;
  for (Rule r : all_rules()) {
    t.require(used.count(r), std::string(rule_name(r)) + " not covered");
    base_covered += is_base_rule(r) && used.count(r);
  }
  int rejected = 0;
  for (const auto& m : mutation_suite()) {
    CheckResult r = check_text(mutated_text(m));
    bool right = !r.ok && r.code == m.expected;
    rejected += right;
    t.require(right, m.name + " gave " + (r.ok ? std::string("ok") : std::string(violation_name(r.code))) +
                         ", expected " + std::string(violation_name(m.expected)));
  }
  t.fact(kv("derivations", proof_corpus().size()));
  t.fact(kv("base_rules_covered", base_covered) + "/" + std::to_string(kBaseRuleCount));
  t.fact(kv("mutations", mutation_suite().size()));
  t.fact(kv("rejected_with_code", rejected));
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 10. Rule soundness

struct Semantics {
  std::string name;
  bool partial = false;
  ValueSet values = kFourValues;
  EqualityMode equality = EqualityMode::Strict;
};

RulePreservation check_instance(const RuleInstance& ins, const Semantics& sem) {
  if (!is_first_order_rule(ins.step.rule)) return preserves_truth_prop(ins.premises, ins.step.conclusion, sem.values);
  FoOptions o;
  o.max_domain = 2;
  o.allowed = sem.values;
  o.mode = sem.partial ? StructureMode::Partial : StructureMode::Total;
  o.equality = sem.equality;
  return preserves_truth_fo(ins.premises, ins.step.conclusion, o);
}

struct SoundnessRun {
  std::uint64_t instances = 0;
  std::uint64_t non_vacuous = 0;
  std::uint64_t violations = 0;
  std::uint64_t bound_exceeded = 0;
  std::string first_violation;
};

SoundnessRun run_soundness(Rule r, const Semantics& sem, int samples, Rng& rng) {
  SoundnessRun run;
  for (int i = 0; i < samples; ++i) {
    RuleInstance ins = random_rule_instance(r, rng);
    RulePreservation p = check_instance(ins, sem);
    ++run.instances;
    run.non_vacuous += p.premise_models > 0;
    run.bound_exceeded += p.bound_exceeded;
    if (!p.holds && run.violations++ == 0) {
      std::string premises;
      for (const auto& s : ins.premises) premises += (premises.empty() ? "" : " / ") + show(s);
      run.first_violation = std::string(rule_name(r)) + " under " + sem.name + ": [" + premises + "] to [" +
                            show(ins.step.conclusion) + "]";
    }
  }
  return run;
}

CriterionResult rule_soundness(const AcceptanceConfig& config) {
  Tally t;
  Rng rng(config.seed ^ 0x10u);
  const Semantics four{"four-valued"};
  const Semantics partial{"partial", true};
  const Semantics lp{"LP", false, kLpValues};
  const Semantics k3{"K3", false, kK3Values};
  const Semantics cl{"classical", false, kClassicalValues};

  std::uint64_t instances = 0, non_vacuous = 0, violations = 0, pairs = 0;
  auto run = [&](Rule r, const Semantics& sem) {
    SoundnessRun s = run_soundness(r, sem, config.soundness_samples, rng);
    ++pairs;
    instances += s.instances;
    non_vacuous += s.non_vacuous;
    violations += s.violations;
    t.require(s.violations == 0, s.first_violation);
    t.require(s.bound_exceeded == 0, std::string(rule_name(r)) + " exceeded the structure bound");
  };
  for (Rule r : all_rules()) {
    if (is_base_rule(r)) {
      run(r, four);
      if (is_first_order_rule(r) && r != Rule::EqRefl) run(r, partial);
    } else if (r == Rule::NotL) {
      run(r, k3);
      run(r, cl);
    } else if (r == Rule::NotR) {
      run(r, lp);
      run(r, cl);
    } else {
      run(r, partial);
    }
  }

  // The checks must be able to see unsound combinations.
  int detected = 0;
  const std::vector<std::pair<Rule, Semantics>> controls = {
      {Rule::NotL, four},
      {Rule::NotR, four},
      {Rule::NotL, lp},
      {Rule::EqRefl, partial},
      {Rule::EqRepl, {"loose equality", false, kFourValues, EqualityMode::Loose}},
  };
  for (const auto& [r, sem] : controls) {
    SoundnessRun s = run_soundness(r, sem, config.soundness_samples, rng);
    detected += s.violations > 0;
    t.require(s.violations > 0, std::string(rule_name(r)) + " under " + sem.name + " looked sound");
  }
  t.fact(kv("rule_semantics_pairs", pairs));
  t.fact(kv("instances", instances));
  t.fact(kv("with_premise_models", non_vacuous));
  t.fact(kv("violations", violations));
  t.fact(kv("unsound_controls_detected", detected) + "/" + std::to_string(controls.size()));
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 11. Completeness of the search against the oracle

struct AgreementRun {
  std::uint64_t sequents = 0, proofs = 0, countermodels = 0, disagreements = 0;
};

void agree(const Sequent& s, const Packs& packs, AgreementRun& run, Tally& t) {
  SearchBudget budget;
  budget.packs = packs;
  SearchResult r = prove_prop(s, budget);
  Decision d = decide_prop(s, packs.values());
  ++run.sequents;
  bool ok = false;
  if (d.valid) {
    ok = r.status == SearchResult::Status::Proof && r.proof->target() == s;
    run.proofs += ok;
  } else if (r.status == SearchResult::Status::Countermodel && r.countermodel) {
    // Confirm the countermodel against the formulas directly.
    ok = true;
    for (const auto& a : s.antecedent) ok = ok && designated(evaluate(a, *r.countermodel));
    for (const auto& a : s.succedent) ok = ok && !designated(evaluate(a, *r.countermodel));
    for (const auto& [atom, v] : r.countermodel->values()) ok = ok && packs.values().contains(v);
    run.countermodels += ok;
  }
  if (!ok && run.disagreements++ < 3)
    t.require(false, packs.to_string() + " " + show(s) + " oracle=" + (d.valid ? "valid" : "invalid") +
                         " search=" + std::string(status_name(r.status)));
}

CriterionResult completeness(const AcceptanceConfig&) {
  Tally t;
  const auto depth2 = enumerate_prop_formulas({"p", "q"}, 2);
  AgreementRun main_run;
  for_each_small_sequent(static_cast<int>(depth2.size()), false, [&](const auto& g, const auto& d) {
    agree(sequent_of(depth2, g, d), Packs::base(), main_run, t);
    return true;
  });
  t.fact(kv("depth2_sequents", main_run.sequents));
  t.fact(kv("proofs", main_run.proofs));
  t.fact(kv("countermodels", main_run.countermodels));

  const auto depth1 = enumerate_prop_formulas({"p", "q"}, 1);
  std::uint64_t wide = 0, disagreements = main_run.disagreements;
  for (Packs packs : {Packs::base(), Packs::lp(), Packs::k3(), Packs::cl()}) {
    AgreementRun run;
    for_each_small_sequent(static_cast<int>(depth1.size()), true, [&](const auto& g, const auto& d) {
      agree(sequent_of(depth1, g, d), packs, run, t);
      return true;
    });
    wide += run.sequents;
    disagreements += run.disagreements;
  }
  t.fact(kv("depth1_two_per_side_sequents_all_packs", wide));
  t.fact(kv("disagreements", disagreements));
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

// ---------------------------------------------------------------------------
// 12. Partial structures

CriterionResult partial_semantics(const AcceptanceConfig& config) {
  Tally t;
  Signature sig = Signature::parse("const c\n");
  Formula cc = parse_formula("c = c", sig);
  FoOptions o;
  o.mode = StructureMode::Partial;
  o.max_domain = 2;
  FoResult r = consequence_fo({}, std::vector<Formula>{cc}, o);
  bool found = r.status == FoResult::Status::Countermodel && r.structure &&
               r.structure->is_bottom(r.structure->function_value("c", {}));
  t.require(found, "no countermodel to |- c = c with c undefined");
  if (found) t.fact("countermodel=c->" + r.structure->elements[r.structure->function_value("c", {})]);
  o.mode = StructureMode::Total;
  t.require(consequence_fo({}, std::vector<Formula>{cc}, o).status == FoResult::Status::NoCountermodel,
            "|- c = c fails in total structures");

  Rng rng(config.seed ^ 0x12u);
  const Semantics partial{"partial", true};
  for (Rule rule : {Rule::DenL, Rule::DenR}) {
    SoundnessRun s = run_soundness(rule, partial, config.soundness_samples, rng);
    t.fact(std::string(rule_name(rule)) + "_instances=" + std::to_string(s.instances));
    t.require(s.violations == 0, s.first_violation);
    t.require(s.non_vacuous > 0, std::string(rule_name(rule)) + " never had premise models");
  }
  return {0, "", t.ok() ? Status::Pass : Status::Fail, t.detail()};
}

struct CriterionSpec {
  const char* name;
  double limit_seconds;
  CriterionResult (*run)(const AcceptanceConfig&);
  std::uint64_t (*work)(const AcceptanceConfig&);
};

std::uint64_t small_work(const AcceptanceConfig&) { return 1000; }

const std::array<CriterionSpec, kCriterionCount>& criteria() {
  static const std::array<CriterionSpec, kCriterionCount> specs = {{
      {"matrix-fidelity", 1, matrix_fidelity, small_work},
      {"laws", 1, laws, small_work},
      {"classical-failures", 1, classical_failures, small_work},
      {"uniqueness", 10 * 16, uniqueness, [](const AcceptanceConfig&) -> std::uint64_t { return 16 * 6 * 4096; }},
      {"regularity-witnesses", 1, regularity, small_work},
      {"simulation", 60, simulation,
       [](const AcceptanceConfig& c) {
         return small_sequent_count(3303, false) + 3 * static_cast<std::uint64_t>(c.random_instances);
       }},
      {"definability", 10, definability, small_work},
      {"expansion-equivalences", 1, expansion_equivalences, small_work},
      {"proof-kernel", 5, proof_kernel, small_work},
      {"rule-soundness", 120, rule_soundness,
       [](const AcceptanceConfig& c) { return 50 * static_cast<std::uint64_t>(c.soundness_samples); }},
      {"completeness", 300, completeness,
       [](const AcceptanceConfig&) { return small_sequent_count(3303, false) + 4 * small_sequent_count(33, true); }},
      {"partial-semantics", 10, partial_semantics,
       [](const AcceptanceConfig& c) { return 2 * static_cast<std::uint64_t>(c.soundness_samples); }},
  }};
  return specs;
}

}  // namespace

std::string_view status_name(CriterionResult::Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

CriterionResult run_criterion(int id, const AcceptanceConfig& config) {
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("no criterion " + std::to_string(id));
  const CriterionSpec& spec = criteria()[id - 1];
  CriterionResult result;
  std::uint64_t work = spec.work(config);
  if (work > config.max_work) {
    result.status = Status::Skipped;
    result.detail = "skipped: bound (work " + std::to_string(work) + " > " + std::to_string(config.max_work) + ")";
  } else {
    auto start = std::chrono::steady_clock::now();
    try {
      result = spec.run(config);
    } catch (const std::exception& e) {
      result.status = Status::Fail;
      result.detail = std::string("error: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  result.id = id;
  result.name = spec.name;
  result.limit_seconds = spec.limit_seconds;
  if (result.status == Status::Pass && result.seconds > result.limit_seconds) {
    result.status = Status::Fail;
    result.detail += " FAILED: over the time limit";
  }
  return result;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!config.only.empty() && !config.only.count(id)) continue;
    out.push_back(run_criterion(id, config));
    if (on_result) on_result(out.back());
  }
  return out;
}

namespace {

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

std::string limit_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", s);
  return buf;
}

}  // namespace

std::string format_lines(const CriterionResult& r, bool timing) {
  std::string detail = r.detail;
  for (char& c : detail)
    if (c == '"') c = '\'';
  return "criterion=" + std::to_string(r.id) + " name=" + r.name + " status=" + std::string(status_name(r.status)) +
         (timing ? " seconds=" + seconds_text(r.seconds) : std::string()) + " limit=" + limit_text(r.limit_seconds) + " detail=\"" + detail + "\"";
}

std::string format_human(const CriterionResult& r, bool timing) {
  std::string tag = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "SKIP";
  std::string spent = timing ? seconds_text(r.seconds) + "s / " : std::string("limit ");
  char head[128];
  std::snprintf(head, sizeof head, "%s %2d %-22s (%s%ss): ", tag.c_str(), r.id, r.name.c_str(), spent.c_str(),
                limit_text(r.limit_seconds).c_str());
  return head + r.detail;
}

}  // namespace bd4
