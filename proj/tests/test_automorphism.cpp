#include <gtest/gtest.h>

#include <random>

#include "cssaut/automorphism.hpp"
#include "test_util.hpp"

namespace cssaut {
namespace {

using testing::random_matrix;

TEST(Automorphism, RepetitionCodeHasFullSymmetricGroup) {
  EXPECT_EQ(automorphism_group(repetition(5)).order(), 120);
  EXPECT_EQ(brute_force_aut(repetition(4)).order(), 24);
}

TEST(Automorphism, ExtendedHammingMatchesBruteForce) {
  const auto rm13 = reed_muller(1, 3);
  EXPECT_EQ(brute_force_aut(rm13).order(), 1344);
  EXPECT_EQ(automorphism_group(rm13).order(), 1344);
}

TEST(Automorphism, KnownFamilies) {
  EXPECT_EQ(automorphism_group(simplex(4)).order(), 20160);
  EXPECT_EQ(automorphism_group(hamming(4)).order(), 20160);
  EXPECT_EQ(automorphism_group(hamming(3)).order(), 168);
  EXPECT_EQ(automorphism_group(reed_muller(1, 4)).order(), 322560);
}

TEST(Automorphism, SelfDualLength22Code) {
  SearchStats stats;
  const auto g = automorphism_group(code_22_7(), {}, &stats);
  EXPECT_EQ(g.order(), 336);
  EXPECT_GT(stats.nodes, 0U);
  for (const auto& s : g.generators()) EXPECT_TRUE(is_automorphism(code_22_7(), s));
}

TEST(Automorphism, BchLength31) {
  EXPECT_EQ(automorphism_group(bch_dual_31_10()).order(), 155);
  EXPECT_EQ(automorphism_group(bch_31_21()).order(), 155);
}

TEST(Automorphism, CyclicShiftMembership) {
  const auto shift31 = Permutation::rotation(31);
  EXPECT_TRUE(is_automorphism(bch_dual_31_10(), shift31));
  EXPECT_TRUE(automorphism_group(bch_dual_31_10()).contains(shift31));
  const auto shift22 = Permutation::rotation(22);
  EXPECT_FALSE(is_automorphism(code_22_7(), shift22));
  EXPECT_FALSE(automorphism_group(code_22_7()).contains(shift22));
}

TEST(Automorphism, RandomCodesMatchBruteForce) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 4 + rng() % 5;
    const std::size_t rows = 2 + rng() % 3;
    const auto c = LinearCode::from_span(random_matrix(rng, rows, n));
    if (c.k() == 0) continue;
    const auto brute = brute_force_aut(c);
    const auto fast = automorphism_group(c);
    ASSERT_EQ(fast.order(), brute.order()) << serialize_code(c);
    for (const auto& g : fast.generators()) EXPECT_TRUE(brute.contains(g));
  }
}

TEST(Automorphism, DualCodeHasSameGroup) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 6 + rng() % 8;
    const auto c = LinearCode::from_span(random_matrix(rng, 1 + rng() % (n - 1), n));
    if (c.k() == 0 || c.k() == n) continue;
    const auto a = automorphism_group(c);
    const auto b = automorphism_group(dual(c));
    EXPECT_EQ(a.order(), b.order());
    for (const auto& g : b.generators()) EXPECT_TRUE(a.contains(g));
  }
}

TEST(Automorphism, IntersectionOfNestedReedMuller) {
  const auto g = intersect_aut(reed_muller(1, 3), reed_muller(0, 3));
  EXPECT_EQ(g.order(), 1344);
  for (const auto& p : affine_generators(3)) EXPECT_TRUE(g.contains(p));
}

TEST(Automorphism, IntersectionMatchesFilteredBruteForce) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + rng() % 3;
    const auto c1 = LinearCode::from_span(random_matrix(rng, 3, n));
    const auto c2 = LinearCode::from_span(random_matrix(rng, 2, n));
    if (c1.k() == 0 || c2.k() == 0) continue;
    const auto brute = brute_force_aut(c1);
    std::vector<Permutation> both;
    for (const auto& p : brute.elements()) {
      if (is_automorphism(c2, p)) both.push_back(p);
    }
    const auto expected = group_from_elements(n, both);
    EXPECT_EQ(intersect_aut(c1, c2).order(), expected.order());
  }
}

TEST(Automorphism, BudgetExhaustionCarriesPartialGroup) {
  SearchOptions tiny;
  tiny.node_budget = 3;
  try {
    automorphism_group(simplex(4), tiny);
    FAIL() << "expected exhaustion";
  } catch (const SearchExhausted& e) {
    EXPECT_LE(e.partial().order(), 20160);
    EXPECT_EQ(e.partial().degree(), 15U);
  }
}

TEST(Automorphism, RejectsOversizedLength) {
  EXPECT_THROW(automorphism_group(LinearCode::full(41)), InvalidArgument);
  EXPECT_THROW(brute_force_aut(repetition(9)), InvalidArgument);
}

TEST(Automorphism, TrivialAndFullCodes) {
  EXPECT_EQ(automorphism_group(LinearCode::zero(5)).order(), 120);
  EXPECT_EQ(automorphism_group(LinearCode::full(6)).order(), 720);
}

}  // namespace
}  // namespace cssaut
