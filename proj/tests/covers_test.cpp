#include <gtest/gtest.h>

#include <numeric>

#include "abelaut/covers/golden.hpp"

#ifndef ABELAUT_DATA_DIR
#define ABELAUT_DATA_DIR "data"
#endif

using namespace abelaut;
using namespace abelaut::covers;

namespace {

CoverDatum fermat(int d) { return {FiniteAbelianGroup({d, d}), 0, {{1, 0}, {0, 1}, {d - 1, d - 1}}}; }

CoverDatum six_involutions() { return {FiniteAbelianGroup({2}), 0, std::vector<Element>(6, Element{1})}; }

const Check& item(const HypothesisReport& r, const std::string& prefix) {
  for (const auto& c : r.checks())
    if (c.name.rfind(prefix, 0) == 0) return c;
  throw std::runtime_error("no check " + prefix);
}

std::string golden(const std::string& name) { return std::string(ABELAUT_DATA_DIR) + "/golden/" + name; }

}  // namespace

TEST(Group, InvariantFactors) {
  FiniteAbelianGroup g({2, 4});
  EXPECT_EQ(g.order(), 8);
  EXPECT_EQ(g.exponent(), 4);
  EXPECT_FALSE(g.is_cyclic());
  EXPECT_TRUE(FiniteAbelianGroup().is_cyclic());
  EXPECT_EQ(FiniteAbelianGroup().order(), 1);
  EXPECT_THROW(FiniteAbelianGroup({4, 2}), PreconditionError);
  EXPECT_THROW(FiniteAbelianGroup({1}), PreconditionError);
}

TEST(Group, AllOfOrderCountsAbelianGroups) {
  EXPECT_EQ(FiniteAbelianGroup::all_of_order(16).size(), 5u);
  EXPECT_EQ(FiniteAbelianGroup::all_of_order(36).size(), 4u);
  EXPECT_EQ(FiniteAbelianGroup::all_of_order(7).size(), 1u);
}

TEST(Group, AutomorphismCounts) {
  EXPECT_EQ(FiniteAbelianGroup({2, 2}).automorphisms().size(), 6u);
  EXPECT_EQ(FiniteAbelianGroup({12}).automorphisms().size(), 4u);
  EXPECT_EQ(FiniteAbelianGroup({4, 4}).automorphisms().size(), 96u);
}

TEST(HurwitzGenus, Examples) {
  EXPECT_EQ(hurwitz_genus(fermat(5)), 6);
  EXPECT_EQ(hurwitz_genus(fermat(4)), 3);
  EXPECT_EQ(hurwitz_genus(CoverDatum{FiniteAbelianGroup(), 2, {}}), 2);
  EXPECT_EQ(hurwitz_genus(six_involutions()), 2);
  EXPECT_EQ(hurwitz_genus(2, 0, {2, 2}), 0);
  EXPECT_FALSE(hurwitz_genus(2, 0, {2, 2, 2}));
  EXPECT_FALSE(hurwitz_genus(4, 0, {2}));
}

TEST(HurwitzGenus, InvalidDataRejected) {
  EXPECT_THROW(hurwitz_genus(CoverDatum{FiniteAbelianGroup({5}), 0, {{1}, {1}}}), PreconditionError);
  EXPECT_THROW(hurwitz_genus(CoverDatum{FiniteAbelianGroup({2, 2}), 0, {{1, 0}, {1, 0}}}), PreconditionError);
  EXPECT_THROW(hurwitz_genus(CoverDatum{FiniteAbelianGroup({3}), 0, {{0}, {1}, {2}}}), PreconditionError);
}

TEST(Lemma43, Examples) {
  auto r = lemma43_admissible(25, {5, 5, 5}, false);
  EXPECT_TRUE(r.admissible());
  auto c = lemma43_admissible(42, {2, 3, 7}, true);
  EXPECT_FALSE(item(c, "(i)").holds);
  auto cyc = lemma43_admissible(25, {5, 5, 5}, true);
  EXPECT_FALSE(item(cyc, "(iv)").holds);
  EXPECT_TRUE(item(cyc, "(i)").holds);
}

TEST(Lemma43, NeedsGenusZeroQuotient) {
  CoverDatum d{FiniteAbelianGroup({2}), 1, {{1}, {1}}};
  EXPECT_THROW(lemma43_admissible(d, false), PreconditionError);
}

TEST(QuotientGenus, TrivialAndFullSubgroups) {
  for (const auto& d : {fermat(4), fermat(5), six_involutions(), example_family_49(3)}) {
    std::vector<int> all(d.group.order());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(quotient_genus(d, Subgroup{all, {}}), d.gamma);
    EXPECT_EQ(quotient_genus(d, Subgroup{{0}, {}}), hurwitz_genus(d));
  }
}

TEST(QuotientGenus, NotASubgroupRejected) {
  EXPECT_THROW(quotient_genus(fermat(4), Subgroup{{0, 1}, {}}), PreconditionError);
}

TEST(QuotientGenus, MonotoneAlongSubgroupChains) {
  for (const auto& d : {fermat(4), example_family_49(2), example_family_49(4)}) {
    const auto& g = d.group;
    for (int x = 0; x < g.order(); ++x)
      for (int y = 0; y < g.order(); ++y) {
        auto h1 = subgroup_generated_by(g, {g.element(x)});
        auto h2 = subgroup_generated_by(g, {g.element(x), g.element(y)});
        ASSERT_GE(*quotient_genus(d, h1), *quotient_genus(d, h2));
      }
  }
}

TEST(Witness, DoubleCoverOfLine) {
  auto w = hyperelliptic_witness(six_involutions());
  ASSERT_TRUE(w);
  EXPECT_EQ(w->quotient_genus, 0);
  EXPECT_EQ(w->kind(), "hyperelliptic");
}

TEST(Witness, FermatQuarticHasNoGenusZeroQuotient) {
  auto qs = involution_quotients(fermat(4));
  EXPECT_EQ(qs.size(), 3u);
  for (const auto& w : qs) EXPECT_EQ(w.quotient_genus, 1);
  auto w = hyperelliptic_witness(fermat(4));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->kind(), "bi-elliptic");
  EXPECT_TRUE(involution_quotients(fermat(5)).empty());
}

TEST(Enumerate, FermatExceptions) {
  EnumerationFilters f;
  f.require_no_hyperelliptic_witness = true;
  auto recs = enumerate_extremal(2, 8, LinearBound::parse("3g+6"), f);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].genus, 3);
  EXPECT_EQ(recs[0].datum.group.invariant_factors(), (std::vector<int>{4, 4}));
  EXPECT_EQ(recs[0].datum.signature(), (std::vector<int>{4, 4, 4}));
  EXPECT_EQ(recs[1].genus, 6);
  EXPECT_EQ(recs[1].datum.group.invariant_factors(), (std::vector<int>{5, 5}));
  EXPECT_EQ(recs[1].datum.signature(), (std::vector<int>{5, 5, 5}));
}

TEST(Enumerate, RecordsAreValidAndConsistent) {
  auto recs = enumerate_extremal(2, 8, LinearBound::parse("3g+6"), {});
  EXPECT_EQ(recs.size(), 14u);
  for (const auto& r : recs) {
    validate(r.datum);
    EXPECT_EQ(hurwitz_genus(r.datum), r.genus);
    EXPECT_GT(Rational(r.datum.group.order()), Rational(3 * r.genus + 6));
    EXPECT_LE(r.datum.group.order(), 4 * r.genus + 4);
    auto l43 = lemma43_admissible(r.datum, false);
    if (item(l43, "(i)").holds && item(l43, "(iii)").holds) EXPECT_TRUE(item(l43, "(ii)").holds);
    bool fermat_like = r.datum.group.invariant_factors() == std::vector<int>{4, 4} ||
                       r.datum.group.invariant_factors() == std::vector<int>{5, 5};
    bool genus_zero = false;
    for (const auto& w : r.witnesses) genus_zero = genus_zero || w.quotient_genus == 0;
    EXPECT_TRUE(genus_zero || fermat_like) << signature_of(r).to_string();
    auto back = datum_from_json(to_json(r.datum));
    EXPECT_EQ(back.branch, r.datum.branch);
    EXPECT_EQ(back.group, r.datum.group);
  }
}

TEST(Enumerate, VariableModuliRunMatchesGolden) {
  auto g = load_golden(golden("variable_moduli_3g3.json"));
  auto recs = enumerate_extremal(g.gmin, g.gmax, g.bound, g.filters);
  auto cmp = compare_golden(recs, g);
  EXPECT_TRUE(cmp.exact()) << cmp.to_json().dump();
  for (const auto& r : recs) {
    auto w = hyperelliptic_witness(r.datum);
    ASSERT_TRUE(w);
    EXPECT_LE(w->quotient_genus, 1);
  }
  ASSERT_TRUE(cmp.printed);
  EXPECT_FALSE(cmp.printed->exact());
  std::vector<std::string> missing;
  for (const auto& s : cmp.printed->missing) missing.push_back(s.to_string());
  EXPECT_EQ(missing, std::vector<std::string>{"{6, 16, 4, (8,4,2,2)}"});
}

TEST(Enumerate, CyclicRunIsEmpty) {
  EnumerationFilters f;
  f.gamma = 0;
  f.kmin = 4;
  f.assume_cyclic = true;
  EXPECT_TRUE(enumerate_extremal(3, 8, LinearBound::parse("2g+2"), f).empty());
  EXPECT_TRUE(enumerate_extremal(3, 6, LinearBound::parse("2g+2"), f).empty());
}

TEST(Enumerate, EmptyRange) { EXPECT_TRUE(enumerate_extremal(5, 4, LinearBound::parse("3g+6"), {}).empty()); }

TEST(Enumerate, ThreeGPlusSixGoldenFile) {
  auto g = load_golden(golden("fermat_3g6.json"));
  EXPECT_TRUE(compare_golden(enumerate_extremal(g.gmin, g.gmax, g.bound, g.filters), g).exact());
}

TEST(LinearBound, Parse) {
  auto b = LinearBound::parse("3g-3");
  EXPECT_EQ(b.at(4), Rational(9));
  EXPECT_EQ(LinearBound::parse("4g - 4").at(2), Rational(4));
  EXPECT_EQ(LinearBound::parse("g+1").at(2), Rational(3));
  EXPECT_ANY_THROW(LinearBound::parse("3x+1"));
}

TEST(Family49, SmallMembers) {
  for (int m = 2; m <= 6; ++m) {
    auto d = example_family_49(m);
    EXPECT_EQ(hurwitz_genus(d), 3 * m - 2);
    EXPECT_EQ(d.group.order(), 9 * m);
    EXPECT_EQ(d.group.order(), 3 * (3 * m - 2) + 6);
    EXPECT_EQ(d.signature(), (std::vector<int>{3 * m, 3 * m, 3}));
    EXPECT_TRUE(lemma43_admissible(d, false).admissible());
  }
  EXPECT_THROW(example_family_49(1), PreconditionError);
}

TEST(Family49, SignatureConfirmedByEnumeration) {
  for (int m = 2; m <= 3; ++m) {
    EnumerationFilters f;
    f.gamma = 0;
    f.only_group = std::vector<int>{3, 3 * m};
    auto recs = enumerate_extremal(3 * m - 2, 3 * m - 2, LinearBound::parse("3g+5"), f);
    std::set<std::vector<int>> sigs;
    for (const auto& r : recs) sigs.insert(r.datum.signature());
    EXPECT_EQ(sigs, (std::set<std::vector<int>>{{3 * m, 3 * m, 3}}));
  }
}
