#include <gtest/gtest.h>

#include <set>

#include "bd4/definability.hpp"
#include "bd4/parser.hpp"

namespace bd4 {
namespace {

using enum TruthValue;

Formula prop(std::string_view text) {
  Signature s;
  return parse_formula_infer(text, s);
}

// Unary table written in the index order t, b, n, f.
TruthFunction unary(std::string_view letters) { return TruthFunction::parse(1, letters); }

TEST(Definability, TablesAndNamedFunctions) {
  EXPECT_EQ(named_function("Des").to_string(), "ttff");
  EXPECT_EQ(named_function("Norm").to_string(), "tfft");
  EXPECT_EQ(named_function("Cons").to_string(), "tftt");
  EXPECT_EQ(named_function("Det").to_string(), "ttft");
  EXPECT_EQ(named_function("Confl").to_string(), "tnbf");
  EXPECT_EQ(named_function("->").to_string(), "tbnf tbnf tttt tttt");
  EXPECT_EQ(named_function("Both").at(0), b);
  EXPECT_THROW(named_function("Xor"), Error);
  EXPECT_THROW(TruthFunction(1, {t, t}), Error);
  EXPECT_EQ(TruthFunction::parse(2, "tbnf tbnf tttt tttt"), named_function("->"));
}

TEST(Definability, TruthFunctionOf) {
  EXPECT_EQ(truth_function_of(prop("~(p1 -> F)"), 1), named_function("Des"));
  EXPECT_EQ(truth_function_of(prop("((p1 & ~p1) -> F) & ~((p1 | ~p1) -> F)"), 1),
            named_function("Norm"));
  EXPECT_EQ(truth_function_of(prop("p1"), 1), named_function("id"));
  EXPECT_EQ(truth_function_of(prop("p1 -> p2"), 2), named_function("->"));
  EXPECT_THROW(truth_function_of(prop("Des p1"), {"p1"}, ConnectiveSet::bd_base()), Error);
  EXPECT_THROW(truth_function_of(prop("p1 & q"), 1), Error);
}

TEST(Definability, Criterion) {
  EXPECT_FALSE(is_definable_criterion(named_function("Confl")));
  EXPECT_TRUE(is_definable_criterion(named_function("Des")));
  EXPECT_FALSE(is_definable_criterion(named_function("Both")));
  EXPECT_FALSE(is_definable_criterion(named_function("Neither")));
  EXPECT_TRUE(is_definable_criterion(named_function("F")));
  for (const char* op : {"&", "|", "->", "~"}) EXPECT_TRUE(is_definable_criterion(named_function(op)));
}

std::vector<TruthFunction> all_unary() {
  std::vector<TruthFunction> out;
  for (int code = 0; code < 256; ++code) {
    std::vector<TruthValue> t(4);
    for (int i = 0; i < 4; ++i) t[i] = value_at(code >> (2 * i));
    out.emplace_back(1, t);
  }
  return out;
}

TEST(Definability, UnaryCloneMatchesCriterion) {
  auto base = ConnectiveSet::bd_base().functions();
  auto clone = clone_closure(base, 1);
  EXPECT_EQ(clone.size(), 36u);
  std::set<std::uint64_t> in_clone;
  for (const auto& g : clone) in_clone.insert(g.code());
  int criterion = 0;
  for (const auto& g : all_unary()) {
    // Hand-written membership test: classical values stay classical, b avoids
    // n and n avoids b.
    bool by_hand = classical(g.at(0)) && classical(g.at(3)) && g.at(1) != n && g.at(2) != b;
    EXPECT_EQ(is_definable_criterion(g), by_hand) << g.to_string();
    EXPECT_EQ(in_clone.contains(g.code()), by_hand) << g.to_string();
    criterion += by_hand;
  }
  EXPECT_EQ(criterion, 36);
  for (const auto& g : clone) {
    EXPECT_NE(g.at(1), n);
    EXPECT_NE(g.at(2), b);
  }
}

TEST(Definability, SmallClones) {
  std::vector<TruthFunction> neg = {named_function("~")};
  auto c = clone_closure(neg, 1);
  ASSERT_EQ(c.size(), 2u);
  std::set<std::string> tables = {c[0].to_string(), c[1].to_string()};
  EXPECT_TRUE(tables.contains("tbnf"));
  EXPECT_TRUE(tables.contains("fbnt"));

  auto norm_base = ConnectiveSet::parse("~ & | Norm").functions();
  auto nc = clone_closure(norm_base, 1);
  for (const auto& g : nc) {
    EXPECT_NE(g, named_function("Cons"));
    EXPECT_NE(g, named_function("Det"));
  }
  EXPECT_TRUE(std::find(nc.begin(), nc.end(), named_function("Norm")) != nc.end());
}

TEST(Definability, CloneCap) {
  auto base = ConnectiveSet::bd_base().functions();
  EXPECT_THROW(clone_closure(base, 2, 1000), Error);
}

TEST(Definability, StandardDefinitionsVerify) {
  auto defs = standard_definitions();
  ASSERT_EQ(defs.size(), 4u);
  for (const auto& d : defs) {
    TruthFunction target = named_function(d.name);
    EXPECT_TRUE(verify_definition(d, target)) << d.name;
    EXPECT_TRUE(is_definable_criterion(target));
  }
  EXPECT_EQ(named_function("Cons"), unary("tftt"));
  ConnectiveDef wrong{"Det", {"p1", "p2"}, prop("p1"), ConnectiveSet::bd_base()};
  EXPECT_THROW(verify_definition(wrong, named_function("Det")), Error);
}

TEST(Definability, ExpansionEquivalences) {
  auto checks = check_expansion_equivalences();
  ASSERT_EQ(checks.size(), 8u);
  for (const auto& c : checks) EXPECT_TRUE(c.holds) << c.lhs << " vs " << c.rhs;
  EXPECT_EQ(checks.back().rhs, "Both & Neither");
  auto bad = compare_tables(prop("Cons p"), prop("Det p"));
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.first_difference, "p=B: f vs t");
}

TEST(Definability, FindDefinition) {
  auto des = find_definition(named_function("Des"), ConnectiveSet::bd_base(), 3);
  ASSERT_TRUE(des.has_value());
  EXPECT_EQ(truth_function_of(*des, 1), named_function("Des"));
  EXPECT_LE(des->connective_count(), 3);
  auto id = find_definition(named_function("id"), ConnectiveSet::bd_base(), 3);
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(print_formula(*id), "p1");
  EXPECT_FALSE(find_definition(named_function("Confl"), ConnectiveSet::bd_base(), 4).has_value());
  auto imp = find_definition(named_function("->"), ConnectiveSet::parse("~ | Des"), 3);
  ASSERT_TRUE(imp.has_value());
  EXPECT_EQ(truth_function_of(*imp, 2), named_function("->"));
}

TEST(Definability, MatrixSeparatesValues) {
  auto clone = clone_closure(ConnectiveSet::bd_base().functions(), 1);
  EXPECT_TRUE(separates_values(clone));
  std::vector<TruthFunction> ident = {named_function("id")};
  EXPECT_FALSE(separates_values(ident));
}

}  // namespace
}  // namespace bd4
