// bd4: command-line front end.
//
// Exit status: 0 for an affirmative result (valid, proof found, law holds),
// 1 for a negative one, 2 for usage and input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bd4/acceptance.hpp"
#include "bd4/corpus.hpp"
#include "bd4/definability.hpp"
#include "bd4/kernel.hpp"
#include "bd4/matrix_lab.hpp"
#include "bd4/parser.hpp"
#include "bd4/proof_search.hpp"
#include "bd4/semantics.hpp"
#include "bd4/simulation.hpp"

namespace {

using namespace bd4;

// Key/value output in either format. Human: "key: value"; lines: "key=value".
class Output {
 public:
  explicit Output(bool lines) : lines_(lines) {}

  void field(const std::string& key, const std::string& value) {
    std::cout << key << (lines_ ? "=" : ": ") << (lines_ ? quote(value) : value) << '\n';
  }
  void field(const std::string& key, std::uint64_t value) { field(key, std::to_string(value)); }
  // Free-form text such as a derivation; printed verbatim in both formats.
  void block(const std::string& text) { std::cout << text << (text.ends_with('\n') ? "" : "\n"); }
  bool lines() const { return lines_; }

 private:
  static std::string quote(const std::string& v) {
    if (v.find_first_of(" \t\"") == std::string::npos && !v.empty()) return v;
    std::string out = "\"";
    for (char c : v) out += c == '"' ? '\'' : c;
    return out + "\"";
  }
  bool lines_;
};

struct Globals {
  std::string format = "human";
  std::string sig_path;
  std::string atoms;
  std::uint64_t seed = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses formulas against --sig when given, inferring symbols otherwise.
class Reader {
 public:
  explicit Reader(const Globals& g) {
    if (!g.sig_path.empty()) {
      sig_ = Signature::parse(read_file(g.sig_path));
      strict_ = true;
    }
    std::stringstream in(g.atoms);
    std::string a;
    while (in >> a) atoms_.push_back(a);
    for (const auto& atom : atoms_) sig_.add_proposition(atom);
  }

  Formula formula(const std::string& text) {
    return strict_ ? parse_formula(text, sig_) : parse_formula_infer(text, sig_);
  }
  std::vector<Formula> list(const std::string& text) {
    return strict_ ? parse_formula_list(text, sig_) : parse_formula_list_infer(text, sig_);
  }
  Sequent sequent(const std::string& text) {
    return strict_ ? parse_sequent(text, sig_) : parse_sequent_infer(text, sig_);
  }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const Signature& signature() const { return sig_; }

 private:
  Signature sig_;
  bool strict_ = false;
  std::vector<std::string> atoms_;
};

ValueSet parse_values(const std::string& name) {
  if (name == "four") return kFourValues;
  if (name == "lp") return kLpValues;
  if (name == "k3") return kK3Values;
  if (name == "cl") return kClassicalValues;
  throw Error("unknown value set '" + name + "' (four, lp, k3, cl)");
}

Valuation parse_valuation(const std::string& text) {
  Valuation v;
  std::stringstream in(text);
  std::string item;
  while (in >> item) {
    auto eq = item.find('=');
    std::optional<TruthValue> value;
    if (eq != std::string::npos) value = parse_truth_value(item.substr(eq + 1));
    if (eq == std::string::npos || eq == 0 || !value) throw Error("bad assignment '" + item + "', expected p=B");
    v.set(item.substr(0, eq), *value);
  }
  return v;
}

// Every atom listed with --atoms appears in the witness, in listing order
// of the map; atoms absent from the formulas get F.
Valuation complete(Valuation v, const std::vector<std::string>& atoms) {
  for (const auto& a : atoms)
    if (!v.contains(a)) v.set(a, TruthValue::f);
  return v;
}

bool propositional(const Sequent& s) {
  for (const auto& a : s.antecedent)
    if (!a.is_propositional()) return false;
  for (const auto& a : s.succedent)
    if (!a.is_propositional()) return false;
  return true;
}

struct SemanticsFlags {
  std::string values = "four";
  int domain = 3;
  bool partial = false;
  bool loose = false;
  std::uint64_t cap = 10'000'000;

  void add(CLI::App* cmd) {
    cmd->add_option("--values", values, "propositional value set: four, lp, k3, cl")
        ->check(CLI::IsMember({"four", "lp", "k3", "cl"}));
    cmd->add_option("--domain", domain, "largest domain size for first-order search")->check(CLI::PositiveNumber);
    cmd->add_flag("--partial", partial, "partial structures (terms may be undefined)");
    cmd->add_flag("--loose", loose, "loose equality (any value off the diagonal)");
    cmd->add_option("--cap", cap, "limit on structures times assignments")->check(CLI::PositiveNumber);
  }
  FoOptions fo() const {
    FoOptions o;
    o.max_domain = domain;
    o.mode = partial ? StructureMode::Partial : StructureMode::Total;
    o.equality = loose ? EqualityMode::Loose : EqualityMode::Strict;
    o.cap = cap;
    o.allowed = parse_values(values);
    return o;
  }
};

// Decides a sequent and reports; returns true when it holds.
bool decide(const Sequent& s, const SemanticsFlags& flags, Reader& reader, Output& out) {
  if (propositional(s) && !flags.partial) {
    PropResult r = consequence_prop(s, parse_values(flags.values));
    out.field("holds", r.holds ? "yes" : "no");
    if (!r.holds) out.field("witness", complete(*r.witness, reader.atoms()).to_string());
    return r.holds;
  }
  FoResult r = consequence_fo(s, flags.fo());
  switch (r.status) {
    case FoResult::Status::NoCountermodel:
      out.field("holds", "yes");
      out.field("searched_up_to", static_cast<std::uint64_t>(r.searched_up_to));
      return true;
    case FoResult::Status::BoundExceeded:
      out.field("holds", "unknown");
      out.field("searched_up_to", static_cast<std::uint64_t>(r.searched_up_to));
      out.field("detail", "bound exceeded");
      return false;
    case FoResult::Status::Countermodel:
      out.field("holds", "no");
      if (out.lines()) {
        out.field("structure", print_structure(*r.structure));
      } else {
        out.block(print_structure(*r.structure));
      }
      if (!r.assignment.empty()) out.field("assignment", print_assignment(r.assignment, *r.structure));
      return false;
  }
  return false;
}

std::set<int> parse_ids(const std::string& text) {
  std::set<int> ids;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) ids.insert(std::stoi(item));
  return ids;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (int x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

TruthFunction function_arg(const std::string& text, int arity) {
  if (text.find_first_not_of("tbnfTBNF \t") != std::string::npos) return named_function(text);
  return TruthFunction::parse(arity, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for four-valued Belnap-Dunn logic with implication and falsity"};
  app.set_config("--config", "", "TOML/INI file of option defaults; flags win");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  if (const char* env = std::getenv("BD4_SEED")) {
    try {
      g.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: BD4_SEED is not a number\n";
      return 2;
    }
  }
  app.add_option("--format", g.format, "output format: human or lines")->check(CLI::IsMember({"human", "lines"}));
  app.add_option("--sig", g.sig_path, "signature file; symbols are inferred when absent");
  app.add_option("--atoms", g.atoms, "space-separated proposition symbols to declare and report");
  app.add_option("--seed", g.seed, "random seed (overrides BD4_SEED)");

  int exit_code = 0;
  std::unique_ptr<Output> out;
  auto output = [&]() -> Output& { return *out; };

  // eval
  auto* eval = app.add_subcommand("eval", "value of a formula under a valuation or structure");
  std::string eval_formula, eval_val, eval_structure;
  eval->add_option("formula", eval_formula)->required();
  eval->add_option("--val", eval_val, "valuation such as \"p=B q=F\"");
  eval->add_option("--structure", eval_structure, "structure file for first-order formulas");
  eval->callback([&] {
    Reader reader(g);
    Formula a = reader.formula(eval_formula);
    TruthValue v;
    if (!eval_structure.empty()) {
      Structure m = parse_structure(read_file(eval_structure));
      if (!free_vars(a).empty()) throw Error("formula has free variables");
      v = evaluate(a, m);
    } else {
      if (!a.is_propositional()) throw Error("first-order formula needs --structure");
      v = evaluate(a, parse_valuation(eval_val));
    }
    output().field("value", std::string(1, to_upper_char(v)));
    output().field("designated", designated(v) ? "yes" : "no");
    exit_code = designated(v) ? 0 : 1;
  });

  // entails / countermodel
  SemanticsFlags entail_flags, counter_flags;
  std::string entail_gamma, entail_delta, counter_gamma, counter_delta;
  auto* entails = app.add_subcommand("entails", "whether GAMMA entails DELTA (multiple conclusions)");
  entails->add_option("gamma", entail_gamma, "comma-separated premises")->required();
  entails->add_option("delta", entail_delta, "comma-separated conclusions")->required();
  entail_flags.add(entails);
  entails->callback([&] {
    Reader reader(g);
    Sequent s(reader.list(entail_gamma), reader.list(entail_delta));
    exit_code = decide(s, entail_flags, reader, output()) ? 0 : 1;
  });
  auto* counter = app.add_subcommand("countermodel", "search for a countermodel to GAMMA => DELTA");
  counter->add_option("gamma", counter_gamma)->required();
  counter->add_option("delta", counter_delta)->required();
  counter_flags.add(counter);
  counter->callback([&] {
    Reader reader(g);
    Sequent s(reader.list(counter_gamma), reader.list(counter_delta));
    bool holds = decide(s, counter_flags, reader, output());
    exit_code = holds ? 1 : 0;
  });

  // equiv
  auto* equiv = app.add_subcommand("equiv", "whether two formulas are equivalent or synonymous");
  std::string equiv_a, equiv_b;
  bool equiv_synonymy = false;
  equiv->add_option("a", equiv_a)->required();
  equiv->add_option("b", equiv_b)->required();
  equiv->add_flag("--synonymous", equiv_synonymy, "require identical values, not just mutual entailment");
  equiv->callback([&] {
    Reader reader(g);
    Formula a = reader.formula(equiv_a), b = reader.formula(equiv_b);
    PropResult r = equiv_synonymy ? synonymous_prop(a, b) : equivalent_prop(a, b);
    output().field("holds", r.holds ? "yes" : "no");
    if (!r.holds) output().field("witness", complete(*r.witness, reader.atoms()).to_string());
    exit_code = r.holds ? 0 : 1;
  });

  // laws
  auto* laws = app.add_subcommand("laws", "the distinguishing laws and the uniqueness search");
  laws->require_subcommand(1);
  auto* laws_check = laws->add_subcommand("check", "verify the laws on the BD matrix");
  int law_id = 0;
  laws_check->add_option("--law", law_id, "check a single law")->check(CLI::Range(1, 15));
  laws_check->callback([&] {
    bool all = true;
    for (const auto& l : distinguishing_laws()) {
      if (law_id && l.id != law_id) continue;
      LawCheck c = check_law(bd_matrix(), l);
      all = all && c.holds;
      output().field("law" + std::to_string(l.id), c.holds ? "holds" : "fails at " + c.witness);
    }
    exit_code = all ? 0 : 1;
  });
  auto* laws_unique = laws->add_subcommand("uniqueness", "count the regular matrices satisfying the laws");
  std::vector<int> drop;
  laws_unique->add_option("--drop", drop, "laws to leave out")->check(CLI::Range(1, 15));
  laws_unique->callback([&] {
    UniquenessOptions o;
    o.dropped.insert(drop.begin(), drop.end());
    UniquenessResult r = uniqueness_search(o);
    for (const auto& st : r.stages) {
      std::string name(slot_name(st.slot));
      output().field(name + ".candidates", st.candidates);
      output().field(name + ".examined", st.examined);
      output().field(name + ".surviving", st.surviving);
      output().field(name + ".laws", join_ints(st.laws));
    }
    output().field("survivors", r.survivors);
    bool is_bd = r.survivors == 1 && r.matrices.size() == 1 && r.matrices[0] == bd_matrix();
    output().field("equals_bd", is_bd ? "yes" : "no");
    exit_code = is_bd ? 0 : 1;
  });
  auto* laws_classical = laws->add_subcommand("classical", "classical equivalences on the BD matrix");
  laws_classical->callback([&] {
    bool all = true;
    for (const auto& r : check_classical_failures(bd_matrix())) {
      all = all && r.holds;
      output().field(r.law, r.holds ? "holds" : "fails at " + r.witness);
    }
    exit_code = all ? 0 : 1;
  });

  // define
  auto* define = app.add_subcommand("define", "definability of truth functions");
  define->require_subcommand(1);
  auto* def_verify = define->add_subcommand("verify", "check a standard definition against its table");
  std::string def_name;
  def_verify->add_option("name", def_name, "Des, Norm, Cons or Det")->required();
  def_verify->callback([&] {
    for (const auto& d : standard_definitions()) {
      if (d.name != def_name) continue;
      bool ok = verify_definition(d, named_function(d.name));
      output().field("definition", print_formula(d.formula));
      output().field("base", d.base.to_string());
      output().field("table", named_function(d.name).to_string());
      output().field("verified", ok ? "yes" : "no");
      exit_code = ok ? 0 : 1;
      return;
    }
    throw Error("no standard definition of '" + def_name + "'");
  });
  auto* def_criterion = define->add_subcommand("criterion", "whether a function meets the definability criterion");
  std::string crit_fn;
  int crit_arity = 1;
  def_criterion->add_option("function", crit_fn, "connective name or table letters")->required();
  def_criterion->add_option("--arity", crit_arity)->check(CLI::Range(0, 2));
  def_criterion->callback([&] {
    TruthFunction f = function_arg(crit_fn, crit_arity);
    bool ok = is_definable_criterion(f);
    output().field("table", f.to_string());
    output().field("definable", ok ? "yes" : "no");
    exit_code = ok ? 0 : 1;
  });
  auto* def_clone = define->add_subcommand("clone", "truth functions generated by a base");
  int clone_arity = 1;
  std::string clone_base = "F ~ & | ->";
  bool clone_list = false;
  def_clone->add_option("--arity", clone_arity)->check(CLI::Range(0, 2));
  def_clone->add_option("--base", clone_base, "connectives, e.g. \"~ & | Norm\"");
  def_clone->add_flag("--list", clone_list, "print every table");
  def_clone->callback([&] {
    std::vector<TruthFunction> base = ConnectiveSet::parse(clone_base).functions();
    std::vector<TruthFunction> clone = clone_closure(base, clone_arity);
    output().field("size", clone.size());
    if (clone_list)
      for (const auto& f : clone) output().field("table", f.to_string());
    exit_code = 0;
  });
  auto* def_synth = define->add_subcommand("synth", "find a shortest defining formula");
  std::string synth_fn, synth_base = "F ~ & | ->";
  int synth_arity = 1, synth_depth = 4;
  def_synth->add_option("function", synth_fn, "connective name or table letters")->required();
  def_synth->add_option("--arity", synth_arity)->check(CLI::Range(0, 2));
  def_synth->add_option("--base", synth_base);
  def_synth->add_option("--depth", synth_depth, "maximum number of connectives")->check(CLI::NonNegativeNumber);
  def_synth->callback([&] {
    TruthFunction f = function_arg(synth_fn, synth_arity);
    std::optional<Formula> d = find_definition(f, ConnectiveSet::parse(synth_base), synth_depth);
    output().field("table", f.to_string());
    output().field("definition", d ? print_formula(*d) : "none found");
    exit_code = d ? 0 : 1;
  });

  // check
  auto* check = app.add_subcommand("check", "check a derivation file");
  std::string check_path;
  check->add_option("file", check_path)->required()->check(CLI::ExistingFile);
  check->callback([&] {
    Derivation d = parse_derivation(read_file(check_path));
    CheckResult r = check_derivation(d);
    output().field("valid", r.ok ? "yes" : "no");
    if (r.ok) {
      output().field("steps", d.steps.size());
      output().field("target", print_sequent(d.target(), ", ", " => "));
      output().field("proof", d.is_proof() ? "yes" : "from hypotheses");
    } else {
      output().field("step", static_cast<std::uint64_t>(r.step + 1));
      output().field("violation", std::string(violation_name(r.code)));
      output().field("message", r.message);
    }
    exit_code = r.ok ? 0 : 1;
  });

  // prove
  auto* prove = app.add_subcommand("prove", "search for a proof of a propositional sequent");
  std::string prove_sequent, prove_packs = "base", prove_emit;
  int prove_depth = 200;
  std::int64_t prove_nodes = 1'000'000;
  prove->add_option("sequent", prove_sequent, "e.g. \"p & q => q & p\"")->required();
  prove->add_option("--packs", prove_packs, "base, lp, k3, cl, notL, notR");
  prove->add_option("--depth", prove_depth)->check(CLI::PositiveNumber);
  prove->add_option("--nodes", prove_nodes)->check(CLI::PositiveNumber);
  prove->add_option("--emit", prove_emit, "write the derivation to this file");
  prove->callback([&] {
    Reader reader(g);
    Sequent s = reader.sequent(prove_sequent);
    SearchBudget budget;
    budget.max_depth = prove_depth;
    budget.max_nodes = prove_nodes;
    budget.packs = Packs::parse(prove_packs);
    SearchResult r = prove_prop(s, budget);
    output().field("status", std::string(status_name(r.status)));
    output().field("nodes", static_cast<std::uint64_t>(r.nodes));
    if (r.proof) {
      std::string text = print_derivation(*r.proof);
      if (!prove_emit.empty()) {
        std::ofstream f(prove_emit);
        if (!(f << text)) throw Error("cannot write " + prove_emit);
        output().field("written", prove_emit);
      } else if (!output().lines()) {
        output().block(text);
      }
      output().field("steps", r.proof->steps.size());
    }
    if (r.countermodel) output().field("countermodel", complete(*r.countermodel, reader.atoms()).to_string());
    exit_code = r.status == SearchResult::Status::Proof ? 0 : 1;
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "compare LP, K3 or classical consequence with its BD translation");
  std::string sim_gamma, sim_delta, sim_mode = "lp";
  simulate->add_option("gamma", sim_gamma)->required();
  simulate->add_option("delta", sim_delta)->required();
  simulate->add_option("--mode", sim_mode, "lp, k3 or cl")->check(CLI::IsMember({"lp", "k3", "cl"}));
  simulate->callback([&] {
    Reader reader(g);
    std::vector<Formula> gamma = reader.list(sim_gamma), delta = reader.list(sim_delta);
    SimulationCheck c = verify_simulation(gamma, delta, parse_mode(sim_mode));
    output().field("mode_holds", c.mode_holds ? "yes" : "no");
    output().field("translated_holds", c.translated_holds ? "yes" : "no");
    output().field("bd_holds", c.bd_holds ? "yes" : "no");
    output().field("translation", "{" + print_formula_list(c.translation) + "}");
    if (c.counterexample) output().field("counterexample", c.counterexample->to_string());
    output().field("agrees", c.agrees() && c.inclusion() ? "yes" : "no");
    exit_code = c.agrees() && c.inclusion() ? 0 : 1;
  });

  // report
  auto* report = app.add_subcommand("report", "run the acceptance suites");
  std::string report_only, report_out;
  std::vector<int> report_drop;
  std::uint64_t report_max_work = std::numeric_limits<std::uint64_t>::max();
  int report_random = 10'000, report_samples = 1'000;
  bool report_no_timing = false;
  report->add_option("--only", report_only, "comma-separated criteria");
  report->add_option("--drop", report_drop, "laws to leave out of the uniqueness run")->check(CLI::Range(1, 15));
  report->add_option("--max-work", report_max_work, "skip suites estimated above this much work");
  report->add_option("--random-instances", report_random)->check(CLI::NonNegativeNumber);
  report->add_option("--soundness-samples", report_samples)->check(CLI::PositiveNumber);
  report->add_option("--output", report_out, "also write the report to this file");
  report->add_flag("--no-timing", report_no_timing, "omit seconds, for byte-identical reruns");
  report->callback([&] {
    AcceptanceConfig config;
    config.seed = g.seed;
    config.only = parse_ids(report_only);
    config.dropped_laws.insert(report_drop.begin(), report_drop.end());
    config.max_work = report_max_work;
    config.random_instances = report_random;
    config.soundness_samples = report_samples;
    std::ofstream file;
    if (!report_out.empty()) {
      file.open(report_out);
      if (!file) throw Error("cannot write " + report_out);
    }
    bool all = true;
    run_acceptance(config, [&](const CriterionResult& r) {
      all = all && r.status == CriterionResult::Status::Pass;
      std::string line = output().lines() ? format_lines(r, !report_no_timing) : format_human(r, !report_no_timing);
      std::cout << line << std::endl;
      if (file) file << line << '\n';
    });
    exit_code = all ? 0 : 1;
  });

  try {
    app.parse_complete_callback([&] { out = std::make_unique<Output>(g.format == "lines"); });
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
