#include "bd4/corpus.hpp"

namespace bd4 {

namespace {

std::vector<CorpusEntry> build_corpus() {
  return {
      {"and_commute", R"bd(packs: base
1: Id principal="q" |- p; q => q
2: Id principal="p" |- p; q => p
3: &-R premises=[1,2] principal="q & p" |- p; q => q & p
4: &-L premises=[3] principal="p & q" |- p & q => q & p
)bd", ""},
      {"or_commute", R"bd(packs: base
1: Id principal="p" |- p => q; p
2: |-R premises=[1] principal="q | p" |- p => q | p
3: Id principal="q" |- q => q; p
4: |-R premises=[3] principal="q | p" |- q => q | p
5: |-L premises=[2,4] principal="p | q" |- p | q => q | p
)bd", ""},
      {"curried_modus_ponens", R"bd(packs: base
1: Id principal="p" |- p => q; p
2: Id principal="q" |- q; p => q
3: ->-L premises=[1,2] principal="p -> q" |- p -> q; p => q
4: ->-R premises=[3] principal="(p -> q) -> q" |- p => (p -> q) -> q
5: ->-R premises=[4] principal="p -> (p -> q) -> q" |- => p -> (p -> q) -> q
)bd", ""},
      {"falsity", R"bd(packs: base
1: F-L |- F => q
2: ->-R premises=[1] principal="F -> q" |- => F -> q
3: ~F-R |- => T
4: &-R premises=[2,3] principal="(F -> q) & T" |- => (F -> q) & T
)bd", ""},
      {"cut_chain", R"bd(packs: base
1: Id principal="p" |- p => p; q
2: |-R premises=[1] principal="p | q" |- p => p | q
3: Id principal="p" |- p => q; p
4: |-R premises=[3] principal="q | p" |- p => q | p
5: Id principal="q" |- q => q; p
6: |-R premises=[5] principal="q | p" |- q => q | p
7: |-L premises=[4,6] principal="p | q" |- p | q => q | p
8: Cut premises=[2,7] principal="p | q" |- p => q | p
)bd", ""},
      {"de_morgan_and", R"bd(packs: base
1: Id principal="~p" |- ~p => ~p; ~q
2: |-R premises=[1] principal="~p | ~q" |- ~p => ~p | ~q
3: Id principal="~q" |- ~q => ~p; ~q
4: |-R premises=[3] principal="~p | ~q" |- ~q => ~p | ~q
5: ~&-L premises=[2,4] principal="~(p & q)" |- ~(p & q) => ~p | ~q
)bd", ""},
      {"de_morgan_and_converse", R"bd(packs: base
1: Id principal="~p" |- ~p => ~p; ~q
2: ~&-R premises=[1] principal="~(p & q)" |- ~p => ~(p & q)
3: Id principal="~q" |- ~q => ~p; ~q
4: ~&-R premises=[3] principal="~(p & q)" |- ~q => ~(p & q)
5: |-L premises=[2,4] principal="~p | ~q" |- ~p | ~q => ~(p & q)
)bd", ""},
      {"de_morgan_or", R"bd(packs: base
1: Id principal="~p" |- ~p; ~q => ~p
2: Id principal="~q" |- ~p; ~q => ~q
3: &-R premises=[1,2] principal="~p & ~q" |- ~p; ~q => ~p & ~q
4: ~|-L premises=[3] principal="~(p | q)" |- ~(p | q) => ~p & ~q
5: ~|-R premises=[1,2] principal="~(p | q)" |- ~p; ~q => ~(p | q)
6: &-L premises=[5] principal="~p & ~q" |- ~p & ~q => ~(p | q)
)bd", ""},
      {"double_negation", R"bd(packs: base
1: Id principal="p" |- p => p
2: ~~-L premises=[1] principal="~~p" |- ~~p => p
3: ~~-R premises=[2] principal="~~p" |- ~~p => ~~p
)bd", ""},
      {"negated_implication", R"bd(packs: base
1: Id principal="p" |- p; ~q => p
2: Id principal="~q" |- p; ~q => ~q
3: ~->-R premises=[1,2] principal="~(p -> q)" |- p; ~q => ~(p -> q)
4: &-R premises=[1,2] principal="p & ~q" |- p; ~q => p & ~q
5: ~->-L premises=[4] principal="~(p -> q)" |- ~(p -> q) => p & ~q
)bd", ""},
      {"forall_exists", R"bd(packs: base
1: Id principal="P(x)" |- P(x) => P(x)
2: exists-R premises=[1] principal="exists x. P(x)" t="x" |- P(x) => exists x. P(x)
3: forall-L premises=[2] principal="forall x. P(x)" t="x" |- forall x. P(x) => exists x. P(x)
)bd", ""},
      {"quantifier_swap", R"bd(packs: base
1: Id principal="R(x, y)" |- R(x, y) => R(x, y)
2: exists-R premises=[1] principal="exists y. R(x, y)" t="y" |- R(x, y) => exists y. R(x, y)
3: forall-L premises=[2] principal="forall x. R(x, y)" t="x" |- forall x. R(x, y) => exists y. R(x, y)
4: exists-L premises=[3] principal="exists y. forall x. R(x, y)" y="y" |- exists y. forall x. R(x, y) => exists y. R(x, y)
5: forall-R premises=[4] principal="forall x. exists y. R(x, y)" y="x" |- exists y. forall x. R(x, y) => forall x. exists y. R(x, y)
)bd", ""},
      {"negated_forall", R"bd(packs: base
1: Id principal="~P(x)" |- ~P(x) => ~P(x)
2: exists-R premises=[1] principal="exists x. ~P(x)" t="x" |- ~P(x) => exists x. ~P(x)
3: ~forall-L premises=[2] principal="~forall x. P(x)" y="x" |- ~forall x. P(x) => exists x. ~P(x)
)bd", ""},
      {"negated_exists", R"bd(packs: base
1: Id principal="~P(x)" |- ~P(x) => ~P(x)
2: ~exists-L premises=[1] principal="~exists x. P(x)" t="x" |- ~exists x. P(x) => ~P(x)
3: forall-R premises=[2] principal="forall x. ~P(x)" y="x" |- ~exists x. P(x) => forall x. ~P(x)
)bd", ""},
      {"negated_quantifiers_right", R"bd(packs: base
1: Id principal="~P(x)" |- ~P(x) => ~P(x)
2: ~forall-R premises=[1] principal="~forall x. P(x)" t="x" |- ~P(x) => ~forall x. P(x)
3: exists-L premises=[2] principal="exists x. ~P(x)" y="x" |- exists x. ~P(x) => ~forall x. P(x)
4: forall-L premises=[1] principal="forall x. ~P(x)" t="x" |- forall x. ~P(x) => ~P(x)
5: ~exists-R premises=[4] principal="~exists x. P(x)" y="x" |- forall x. ~P(x) => ~exists x. P(x)
)bd", ""},
      {"equality_symmetric", R"bd(packs: base
sig: const a
sig: const b
1: Id principal="b = a" |- b = a => b = a
2: =-Repl premises=[1] side="b = x" x="x" t="a" t2="b" |- a = b; b = b => b = a
3: =-Refl premises=[2] t="b" |- a = b => b = a
)bd", "equality_symmetric_axioms"},
      {"equality_symmetric_axioms", R"bd(packs: base
sig: const a
sig: const b
1: Id principal="a = b" |- a = b; a = a => b = a; a = b
2: Id principal="a = a" |- a = b; a = a => b = a; a = a
3: &-R premises=[1,2] principal="a = b & a = a" |- a = b; a = a => b = a; a = b & a = a
4: &-R premises=[3,2] principal="a = b & a = a & a = a" |- a = b; a = a => b = a; a = b & a = a & a = a
5: Id principal="b = a" |- b = a; a = b; a = a => b = a
6: ->-L premises=[4,5] principal="a = b & a = a & a = a -> b = a" |- a = b & a = a & a = a -> b = a; a = b; a = a => b = a
7: forall-L premises=[6] principal="forall y2. a = b & a = y2 & a = a -> b = y2" t="a" |- forall y2. a = b & a = y2 & a = a -> b = y2; a = b; a = a => b = a
8: forall-L premises=[7] principal="forall x2. forall y2. a = b & x2 = y2 & a = x2 -> b = y2" t="a" |- forall x2. forall y2. a = b & x2 = y2 & a = x2 -> b = y2; a = b; a = a => b = a
9: forall-L premises=[8] principal="forall y1. forall x2. forall y2. a = y1 & x2 = y2 & a = x2 -> y1 = y2" t="b" |- forall y1. forall x2. forall y2. a = y1 & x2 = y2 & a = x2 -> y1 = y2; a = b; a = a => b = a
10: forall-L premises=[9] principal="forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & x1 = x2 -> y1 = y2" t="a" |- forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & x1 = x2 -> y1 = y2; a = b; a = a => b = a
11: forall-L premises=[10] principal="forall x. x = x" t="a" |- forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & x1 = x2 -> y1 = y2; forall x. x = x; a = b => b = a
)bd", ""},
      {"equality_replace", R"bd(packs: base
sig: const a
sig: const b
1: Id principal="P(b)" |- P(b) => P(b)
2: =-Repl premises=[1] side="P(x)" x="x" t="b" t2="a" |- b = a; P(a) => P(b)
)bd", "equality_replace_axioms"},
      {"equality_replace_axioms", R"bd(packs: base
sig: const a
sig: const b
1: Id principal="b = a" |- b = a; b = b; P(a) => P(b); a = b; b = a
2: Id principal="b = b" |- b = a; b = b; P(a) => P(b); a = b; b = b
3: &-R premises=[1,2] principal="b = a & b = b" |- b = a; b = b; P(a) => P(b); a = b; b = a & b = b
4: &-R premises=[3,2] principal="b = a & b = b & b = b" |- b = a; b = b; P(a) => P(b); a = b; b = a & b = b & b = b
5: Id principal="a = b" |- a = b; b = a; b = b; P(a) => P(b); a = b
6: ->-L premises=[4,5] principal="b = a & b = b & b = b -> a = b" |- b = a & b = b & b = b -> a = b; b = a; b = b; P(a) => P(b); a = b
7: Id principal="P(a)" |- b = a & b = b & b = b -> a = b; b = a; b = b; P(a) => P(b); P(a)
8: &-R premises=[6,7] principal="a = b & P(a)" |- b = a & b = b & b = b -> a = b; b = a; b = b; P(a) => P(b); a = b & P(a)
9: Id principal="P(b)" |- P(b); b = a & b = b & b = b -> a = b; b = a; b = b; P(a) => P(b)
10: ->-L premises=[8,9] principal="a = b & P(a) -> P(b)" |- a = b & P(a) -> P(b); b = a & b = b & b = b -> a = b; b = a; b = b; P(a) => P(b)
11: forall-L premises=[10] principal="forall y2. b = a & b = y2 & b = b -> a = y2" t="b" |- a = b & P(a) -> P(b); forall y2. b = a & b = y2 & b = b -> a = y2; b = a; b = b; P(a) => P(b)
12: forall-L premises=[11] principal="forall x2. forall y2. b = a & x2 = y2 & b = x2 -> a = y2" t="b" |- a = b & P(a) -> P(b); forall x2. forall y2. b = a & x2 = y2 & b = x2 -> a = y2; b = a; b = b; P(a) => P(b)
13: forall-L premises=[12] principal="forall y1. forall x2. forall y2. b = y1 & x2 = y2 & b = x2 -> y1 = y2" t="a" |- a = b & P(a) -> P(b); forall y1. forall x2. forall y2. b = y1 & x2 = y2 & b = x2 -> y1 = y2; b = a; b = b; P(a) => P(b)
14: forall-L premises=[13] principal="forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & x1 = x2 -> y1 = y2" t="b" |- a = b & P(a) -> P(b); forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & x1 = x2 -> y1 = y2; b = a; b = b; P(a) => P(b)
15: forall-L premises=[14] principal="forall y1. a = y1 & P(a) -> P(y1)" t="b" |- forall y1. a = y1 & P(a) -> P(y1); forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & x1 = x2 -> y1 = y2; b = a; b = b; P(a) => P(b)
16: forall-L premises=[15] principal="forall x1. forall y1. x1 = y1 & P(x1) -> P(y1)" t="a" |- forall x1. forall y1. x1 = y1 & P(x1) -> P(y1); forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & x1 = x2 -> y1 = y2; b = a; b = b; P(a) => P(b)
17: forall-L premises=[16] principal="forall x. x = x" t="b" |- forall x1. forall y1. x1 = y1 & P(x1) -> P(y1); forall x1. forall y1. forall x2. forall y2. x1 = y1 & x2 = y2 & x1 = x2 -> y1 = y2; forall x. x = x; b = a; P(a) => P(b)
)bd", ""},
      {"denotation", R"bd(packs: den
sig: const a
sig: const b
1: Id principal="a = a" |- a = a; b = b => a = a
2: Den-L premises=[1] principal="a = b | a != b" |- a = b | a != b => a = a
3: Id principal="b = b" |- a = a; b = b => b = b
4: Den-R premises=[1,3] principal="a = b | a != b" |- a = a; b = b => a = b | a != b
5: Den-L premises=[4] principal="a = b | a != b" |- a = b | a != b => a = b | a != b
)bd", ""},
      {"excluded_middle_lp", R"bd(packs: lp
1: Id principal="p" |- p => p
2: ~-R premises=[1] principal="~p" |- => p; ~p
3: |-R premises=[2] principal="p | ~p" |- => p | ~p
)bd", ""},
      {"explosion_k3", R"bd(packs: k3
1: Id principal="p" |- p => q; p
2: ~-L premises=[1] principal="~p" |- p; ~p => q
)bd", ""},
      {"contraposition_cl", R"bd(packs: cl
1: Id principal="p" |- p => q; p
2: Id principal="q" |- q; p => q
3: ->-L premises=[1,2] principal="p -> q" |- p -> q; p => q
4: ~-L premises=[3] principal="~q" |- ~q; p -> q; p =>
5: ~-R premises=[4] principal="~p" |- ~q; p -> q => ~p
6: ->-R premises=[5] principal="~q -> ~p" |- p -> q => ~q -> ~p
)bd", ""},
      {"from_hypothesis", R"bd(packs: base
hypothesis: p => q
1: hyp |- p => q
2: ->-R premises=[1] principal="p -> q" |- => p -> q
)bd", ""},
  };
}

using V = Violation;

std::vector<Mutation> build_mutations() {
  return {
      {"id-compound", "", {}, "1: Id principal=\"p & q\" |- p & q => p & q\n", V::LiteralRestriction},
      {"id-double-negation", "", {}, "1: Id principal=\"~~p\" |- ~~p => ~~p\n", V::LiteralRestriction},
      {"id-not-on-both-sides", "and_commute", {{"|- p; q => q\n", "|- p; q => p\n"}}, "", V::ConclusionMismatch},
      {"forward-premise", "and_commute", {{"premises=[1,2]", "premises=[1,4]"}}, "", V::ForwardReference},
      {"steps-permuted", "and_commute",
       {{"3: &-R", "4: &-R"}, {"4: &-L premises=[3]", "3: &-L premises=[3]"}}, "", V::Malformed},
      {"self-premise", "and_commute", {{"4: &-L premises=[3]", "4: &-L premises=[4]"}}, "", V::ForwardReference},
      {"premise-count", "and_commute", {{"premises=[1,2]", "premises=[1]"}}, "", V::PremiseCount},
      {"premises-swapped", "and_commute", {{"premises=[1,2]", "premises=[2,1]"}}, "", V::PremiseMismatch},
      {"principal-wrong-connective", "and_commute", {{"principal=\"p & q\"", "principal=\"p | q\""}}, "", V::PrincipalShape},
      {"principal-missing", "and_commute", {{" principal=\"q & p\"", ""}}, "", V::MissingInstantiation},
      {"context-added", "and_commute", {{"|- p & q => q & p", "|- p & q; r => q & p"}}, "", V::PremiseMismatch},
      {"context-dropped", "and_commute", {{"|- p; q => q & p", "|- p => q & p"}}, "", V::ConclusionMismatch},
      {"forall-right-free-in-context", "", {},
       "1: Id principal=\"~P(x)\" |- ~P(x) => ~P(x)\n"
       "2: forall-R premises=[1] principal=\"forall x. ~P(x)\" y=\"x\" |- ~P(x) => forall x. ~P(x)\n",
       V::Eigenvariable},
      {"exists-left-free-in-succedent", "", {},
       "1: Id principal=\"P(x)\" |- P(x) => P(x)\n"
       "2: exists-L premises=[1] principal=\"exists x. P(x)\" y=\"x\" |- exists x. P(x) => P(x)\n",
       V::Eigenvariable},
      {"forall-right-free-in-body", "", {},
       "hypothesis: => R(y, y)\n"
       "1: hyp |- => R(y, y)\n"
       "2: forall-R premises=[1] principal=\"forall x. R(x, y)\" y=\"y\" |- => forall x. R(x, y)\n",
       V::Eigenvariable},
      {"negated-forall-left-free", "", {},
       "1: Id principal=\"~P(x)\" |- ~P(x) => ~P(x)\n"
       "2: ~forall-L premises=[1] principal=\"~forall x. P(x)\" y=\"x\" |- ~forall x. P(x) => ~P(x)\n",
       V::Eigenvariable},
      {"negated-exists-right-free", "", {},
       "1: Id principal=\"~P(x)\" |- ~P(x) => ~P(x)\n"
       "2: ~exists-R premises=[1] principal=\"~exists x. P(x)\" y=\"x\" |- ~P(x) => ~exists x. P(x)\n",
       V::Eigenvariable},
      {"eigenvariable-missing", "quantifier_swap", {{" y=\"x\"", ""}}, "", V::MissingInstantiation},
      {"not-right-without-pack", "excluded_middle_lp", {{"packs: lp", "packs: base"}}, "", V::PackDisabled},
      {"not-left-in-lp", "explosion_k3", {{"packs: k3", "packs: lp"}}, "", V::PackDisabled},
      {"den-without-pack", "denotation", {{"packs: den", "packs: base"}}, "", V::PackDisabled},
      {"refl-under-den", "equality_symmetric", {{"packs: base", "packs: den"}}, "", V::PackDisabled},
      {"replace-non-literal", "equality_replace", {{"side=\"P(x)\"", "side=\"P(x) & P(x)\""}}, "", V::LiteralRestriction},
      {"replace-reversed", "equality_replace", {{"t=\"b\" t2=\"a\"", "t=\"a\" t2=\"b\""}}, "", V::PremiseMismatch},
      {"replace-missing-term", "equality_replace", {{" t2=\"a\"", ""}}, "", V::MissingInstantiation},
      {"refl-wrong-term", "equality_symmetric", {{"t=\"b\" |- a = b => b = a", "t=\"a\" |- a = b => b = a"}}, "", V::PremiseMismatch},
      {"hypothesis-undeclared", "from_hypothesis", {{"hypothesis: p => q\n", ""}}, "", V::NotAHypothesis},
      {"forall-left-wrong-term", "forall_exists", {{"principal=\"forall x. P(x)\" t=\"x\"", "principal=\"forall x. P(x)\" t=\"y\""}}, "", V::PremiseMismatch},
      {"cut-wrong-formula", "cut_chain", {{"principal=\"p | q\" |- p => q | p", "principal=\"q | p\" |- p => q | p"}}, "", V::PremiseMismatch},
      {"cut-wrong-conclusion", "cut_chain", {{"8: Cut premises=[2,7] principal=\"p | q\" |- p => q | p", "8: Cut premises=[2,7] principal=\"p | q\" |- p; q => q | p"}}, "", V::ConclusionMismatch},
      {"negated-and-premises-swapped", "de_morgan_and", {{"premises=[2,4]", "premises=[4,2]"}}, "", V::PremiseMismatch},
      {"negated-implication-shape", "negated_implication", {{"5: ~->-L premises=[4] principal=\"~(p -> q)\"", "5: ~->-L premises=[4] principal=\"~(p & q)\""}}, "", V::PrincipalShape},
      {"double-negation-shape", "double_negation", {{"2: ~~-L premises=[1] principal=\"~~p\"", "2: ~~-L premises=[1] principal=\"~p\""}}, "", V::PrincipalShape},
      {"falsity-left-without-falsity", "", {}, "1: F-L |- p => q\n", V::ConclusionMismatch},
      {"truth-right-on-left", "", {}, "1: ~F-R |- T => p\n", V::ConclusionMismatch},
      {"den-shape", "denotation", {{"2: Den-L premises=[1] principal=\"a = b | a != b\"", "2: Den-L premises=[1] principal=\"a = b | b != a\""}}, "", V::PrincipalShape},
      {"implication-right-context", "curried_modus_ponens", {{"|- p => (p -> q) -> q", "|- q => (p -> q) -> q"}}, "", V::PremiseMismatch},
      {"empty", "", {}, "packs: base\n", V::EmptyDerivation},
      {"unknown-rule", "", {}, "1: Weaken |- p => p\n", V::UnknownRule},
  };
}

}  // namespace

const std::vector<CorpusEntry>& proof_corpus() {
  static const std::vector<CorpusEntry> corpus = build_corpus();
  return corpus;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : proof_corpus())
    if (e.name == name) return e;
  throw Error("no corpus entry named '" + name + "'");
}

const std::vector<Mutation>& mutation_suite() {
  static const std::vector<Mutation> suite = build_mutations();
  return suite;
}

std::string mutated_text(const Mutation& m) {
  std::string text = m.base.empty() ? m.text : corpus_entry(m.base).text;
  for (const auto& [from, to] : m.edits) {
    auto pos = text.find(from);
    if (pos == std::string::npos) throw Error("mutation " + m.name + ": edit '" + from + "' does not apply");
    text.replace(pos, from.size(), to);
  }
  return text;
}

CheckResult check_text(const std::string& text) {
  try {
    return check_derivation(parse_derivation(text));
  } catch (const DerivationFormatError& e) {
    return {false, -1, e.code(), e.what()};
  }
}

}  // namespace bd4
