#include <gtest/gtest.h>

#include <set>

#include "bd4/matrix_lab.hpp"
#include "bd4/parser.hpp"
#include "bd4/reference_tables.hpp"

namespace bd4 {
namespace {

using enum TruthValue;

int at(TruthValue a, TruthValue b) { return index_of(a) * 4 + index_of(b); }

TEST(MatrixLab, BdMatrixAgreesWithReference) {
  Matrix4 m = bd_matrix();
  EXPECT_EQ(m.falsity, reference::kFalsity);
  for (TruthValue a : kAllValues) {
    EXPECT_EQ(m.apply_neg(a), reference::kNegation[index_of(a)]);
    for (TruthValue b : kAllValues) {
      EXPECT_EQ(m.apply_conj(a, b), reference::kConjunction[index_of(a)][index_of(b)]);
      EXPECT_EQ(m.apply_disj(a, b), reference::kDisjunction[index_of(a)][index_of(b)]);
      EXPECT_EQ(m.apply_imp(a, b), reference::kImplication[index_of(a)][index_of(b)]);
    }
  }
  for (unsigned mask = 1; mask < 16; ++mask) {
    EXPECT_EQ(m.apply_forall(ValueSet(mask)), reference::infimum(mask));
    EXPECT_EQ(m.apply_exists(ValueSet(mask)), reference::supremum(mask));
  }
}

TEST(MatrixLab, RegularityAndClassicalClosure) {
  Matrix4 m = bd_matrix();
  EXPECT_TRUE(is_regular(m));
  EXPECT_TRUE(is_classically_closed(m));

  Matrix4 bad_neg = m;
  bad_neg.neg[index_of(b)] = f;
  EXPECT_FALSE(is_regular(bad_neg));

  Matrix4 bad_conj = m;
  bad_conj.conj[at(t, t)] = n;
  EXPECT_FALSE(is_regular(bad_conj));
  EXPECT_FALSE(is_classically_closed(bad_conj));

  Matrix4 imp_b = m;
  imp_b.imp[at(t, f)] = n;
  EXPECT_TRUE(is_regular(imp_b));
  EXPECT_FALSE(is_classically_closed(imp_b));

  Matrix4 ex = m;
  ex.exists[ValueSet{f}.bits()] = n;
  EXPECT_TRUE(is_regular(ex));
  EXPECT_FALSE(is_classically_closed(ex));
}

TEST(MatrixLab, AllLawsHoldOnBd) {
  ASSERT_EQ(distinguishing_laws().size(), 15u);
  for (const LawInstance& l : distinguishing_laws()) {
    LawCheck c = check_law(bd_matrix(), l);
    EXPECT_TRUE(c.holds) << l.id << ": " << c.witness;
    EXPECT_EQ(law(l.id).id, l.id);
  }
  EXPECT_THROW(law(16), Error);
}

TEST(MatrixLab, DeviantConjunctionBreaksDeMorgan) {
  Matrix4 m = bd_matrix();
  m.conj[at(b, n)] = n;
  LawCheck c = check_law(m, law(9));
  EXPECT_FALSE(c.holds);
  EXPECT_FALSE(c.witness.empty());
  EXPECT_FALSE(check_law(m, law(7)).holds);
}

TEST(MatrixLab, QuantifierLawWitness) {
  Matrix4 m = bd_matrix();
  m.forall[ValueSet{b, n}.bits()] = n;
  LawCheck c = check_law(m, law(14));
  EXPECT_FALSE(c.holds);
  EXPECT_NE(c.witness.find("V={"), std::string::npos);
}

TEST(MatrixLab, EvaluateInMatchesLawIdentity) {
  Signature sig;
  Formula lhs = parse_formula_infer("~(p & q)", sig);
  Formula rhs = parse_formula_infer("~p | ~q", sig);
  std::vector<std::string> atoms = {"p", "q"};
  for (TruthValue a : kAllValues)
    for (TruthValue c : kAllValues) {
      TruthValue v[] = {a, c};
      EXPECT_EQ(evaluate_in(bd_matrix(), lhs, atoms, v), evaluate_in(bd_matrix(), rhs, atoms, v));
    }
}

TEST(MatrixLab, CandidateCounts) {
  EXPECT_EQ(enumerate_candidates(MatrixSlot::Falsity).size(), 2u);
  EXPECT_EQ(enumerate_candidates(MatrixSlot::Neg).size(), 4u);
  for (MatrixSlot s : {MatrixSlot::Conj, MatrixSlot::Disj, MatrixSlot::Imp, MatrixSlot::Forall,
                       MatrixSlot::Exists})
    EXPECT_EQ(enumerate_candidates(s).size(), 4096u) << slot_name(s);
}

TEST(MatrixLab, NegationCandidatesAreExactlyTheRegularClosedOnes) {
  std::set<std::uint32_t> expected;
  for (int code = 0; code < 256; ++code) {
    std::array<TruthValue, 4> table;
    for (int i = 0; i < 4; ++i) table[i] = value_at(code >> (2 * i));
    Matrix4 m = bd_matrix();
    m.neg = table;
    if (is_regular(m) && is_classically_closed(m)) expected.insert(pack_table(table));
  }
  std::set<std::uint32_t> got;
  for (const auto& c : enumerate_candidates(MatrixSlot::Neg)) got.insert(pack_table(c));
  EXPECT_EQ(got, expected);
}

TEST(MatrixLab, BinaryCandidatesAreRegularAndClosed) {
  for (MatrixSlot s : {MatrixSlot::Conj, MatrixSlot::Disj, MatrixSlot::Imp}) {
    auto cands = enumerate_candidates(s);
    std::set<std::uint32_t> distinct;
    for (std::size_t i = 0; i < cands.size(); i += 37) {
      Matrix4 m = bd_matrix();
      auto& slot = s == MatrixSlot::Conj ? m.conj : s == MatrixSlot::Disj ? m.disj : m.imp;
      std::copy(cands[i].begin(), cands[i].end(), slot.begin());
      EXPECT_TRUE(is_regular(m));
      EXPECT_TRUE(is_classically_closed(m));
    }
    for (const auto& c : cands) distinct.insert(pack_table(c));
    EXPECT_EQ(distinct.size(), cands.size());
  }
}

// Brute force over implication tables written without the library's law
// checker: laws 12 and 13 evaluated by explicit loops.
int count_implications_by_hand() {
  using reference::kConjunction;
  using reference::kDisjunction;
  int free_entries[12][2];
  int k = 0;
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) {
      TruthValue va = value_at(a), vc = value_at(c);
      if (classical(va) && classical(vc)) continue;
      bool d = !told_true(va) || told_true(vc);
      free_entries[k][0] = a * 4 + c;
      free_entries[k][1] = d ? 1 : 0;
      ++k;
    }
  int count = 0;
  for (int bits = 0; bits < 4096; ++bits) {
    TruthValue imp[16];
    imp[at(t, t)] = t;
    imp[at(t, f)] = f;
    imp[at(f, t)] = t;
    imp[at(f, f)] = t;
    for (int e = 0; e < 12; ++e) {
      bool high = (bits >> e) & 1;
      imp[free_entries[e][0]] = free_entries[e][1] ? (high ? b : t) : (high ? n : f);
    }
    bool ok = true;
    for (int a1 = 0; a1 < 4 && ok; ++a1)
      for (int a2 = 0; a2 < 4 && ok; ++a2) {
        TruthValue neg_a1 = imp[a1 * 4 + index_of(f)];
        TruthValue l12 = kConjunction[a1][index_of(neg_a1)];
        if (imp[index_of(l12) * 4 + a2] != t) ok = false;
        TruthValue l13 = kDisjunction[a1][index_of(neg_a1)];
        if (imp[index_of(l13) * 4 + a2] != value_at(a2)) ok = false;
      }
    if (ok) ++count;
  }
  return count;
}

TEST(MatrixLab, UniquenessSearch) {
  UniquenessOptions options;
  options.keep = 1000;
  UniquenessResult r = uniqueness_search(options);
  ASSERT_EQ(r.stages.size(), 7u);
  EXPECT_EQ(r.stages[1].candidates, 4u);
  EXPECT_EQ(r.stages[2].candidates, 4096u);
  // Every connective except implication is pinned down.
  EXPECT_EQ(r.stages[0].surviving, 2u);
  EXPECT_EQ(r.stages[3].surviving, 1u);
  EXPECT_EQ(r.stages[5].surviving, 1u);
  EXPECT_EQ(r.stages[6].surviving, 1u);
  EXPECT_EQ(r.survivors, static_cast<std::uint64_t>(count_implications_by_hand()));
  EXPECT_EQ(r.survivors, 81u);
  ASSERT_FALSE(r.matrices.empty());
  Matrix4 bd = bd_matrix();
  Matrix4 got = r.matrices.front();
  EXPECT_EQ(got.neg, bd.neg);
  EXPECT_EQ(got.conj, bd.conj);
  EXPECT_EQ(got.disj, bd.disj);
  EXPECT_EQ(got.forall, bd.forall);
  EXPECT_EQ(got.exists, bd.exists);
}

TEST(MatrixLab, OrderInvariance) {
  UniquenessOptions reversed;
  for (int id = 15; id >= 1; --id) reversed.law_order.push_back(id);
  UniquenessOptions shuffled;
  shuffled.law_order = {7, 3, 12, 1, 15, 9, 5, 11, 2, 14, 8, 13, 4, 10, 6};
  std::uint64_t base = uniqueness_search().survivors;
  EXPECT_EQ(uniqueness_search(reversed).survivors, base);
  EXPECT_EQ(uniqueness_search(shuffled).survivors, base);
}

TEST(MatrixLab, DroppingALawAddsSurvivors) {
  std::uint64_t base = uniqueness_search().survivors;
  UniquenessOptions drop11;
  drop11.dropped = {11};
  EXPECT_GT(uniqueness_search(drop11).survivors, base);
  UniquenessOptions drop12;
  drop12.dropped = {12};
  EXPECT_GT(uniqueness_search(drop12).survivors, base);
}

TEST(MatrixLab, ClassicalLawPattern) {
  auto reports = check_classical_failures(bd_matrix());
  ASSERT_EQ(reports.size(), 5u);
  EXPECT_FALSE(reports[0].holds);
  EXPECT_EQ(reports[0].witness, "A=B");
  EXPECT_FALSE(reports[1].holds);
  EXPECT_FALSE(reports[2].holds);
  EXPECT_TRUE(reports[3].holds);
  EXPECT_TRUE(reports[4].holds);
}

}  // namespace
}  // namespace bd4
