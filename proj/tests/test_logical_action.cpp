#include <gtest/gtest.h>

#include <random>

#include "cssaut/automorphism.hpp"
#include "cssaut/logical_action.hpp"
#include "test_util.hpp"

namespace cssaut {
namespace {

CssCode steane_like_15() { return css_from_pair(hamming(4), simplex(4)); }
CssCode code_22_8() { return css_from_pair(dual(code_22_7()), code_22_7()); }
CssCode bch_31_11() { return css_from_pair(bch_31_21(), bch_dual_31_10()); }

// Random group element as a product of generators.
Permutation random_element(std::mt19937_64& rng, const PermGroup& g) {
  Permutation p = Permutation::identity(g.degree());
  for (int i = 0; i < 12; ++i) p = compose(p, g.generators()[rng() % g.generators().size()]);
  return p;
}

BitVector label(std::uint64_t bits, std::size_t k) {
  BitVector b(k);
  for (std::size_t i = 0; i < k; ++i) {
    if ((bits >> i) & 1U) b.set(i);
  }
  return b;
}

TEST(InducedAction, IdentityGivesIdentityBlocks) {
  const auto css = steane_like_15();
  const auto a = induced_action(css, Permutation::identity(15));
  EXPECT_TRUE(a.t1.is_identity());
  EXPECT_TRUE(a.t2.is_zero());
  EXPECT_TRUE(a.t3.is_identity());
}

TEST(InducedAction, BlocksReproducePermutedBasis) {
  for (const auto& css : {steane_like_15(), code_22_8()}) {
    const auto aut = automorphism_group(css.c2);
    const auto basis = css.logical_basis.stack(css.inner_basis);
    for (const auto& g : aut.generators()) {
      const auto a = induced_action(css, g);
      EXPECT_EQ(a.assembled() * basis, apply_perm(basis, g));
      EXPECT_TRUE(inverse(a.t1).has_value());
      EXPECT_TRUE(inverse(a.t3).has_value());
    }
  }
}

TEST(InducedAction, IsAHomomorphism) {
  std::mt19937_64 rng(5);
  for (const auto& css : {steane_like_15(), code_22_8(), bch_31_11()}) {
    const auto aut = automorphism_group(css.c2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto p = random_element(rng, aut);
      const auto q = random_element(rng, aut);
      const auto pq = induced_action(css, compose(p, q));
      const auto ap = induced_action(css, p);
      const auto aq = induced_action(css, q);
      EXPECT_EQ(pq.t1, ap.t1 * aq.t1);
      EXPECT_EQ(pq.t3, ap.t3 * aq.t3);
      EXPECT_EQ(label_action(css, compose(p, q)), label_action(css, q) * label_action(css, p));
    }
  }
}

TEST(InducedAction, NamesTheViolatedCode) {
  const auto css = code_22_8();
  const auto shift = Permutation::rotation(22);
  try {
    induced_action(css, shift);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("c1"), std::string::npos);
  }
  // A transposition preserving c1 = F_2^n but not c2.
  const auto trivial_outer = css_from_pair(LinearCode::full(4), LinearCode::from_span(BitMatrix::from_strings({"1100"})));
  try {
    induced_action(trivial_outer, Permutation::transposition(4, 1, 2));
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("c2"), std::string::npos);
  }
}

TEST(CosetAction, ExhaustiveOnLength15) {
  const auto css = steane_like_15();
  const auto aut = automorphism_group(css.c2);
  for (const auto& g : aut.generators()) {
    for (std::uint64_t bits = 0; bits < 128; ++bits) {
      ASSERT_TRUE(verify_coset_action(css, g, label(bits, 7)));
    }
  }
}

TEST(CosetAction, ZeroLabelAndRandomSamples) {
  std::mt19937_64 rng(17);
  for (const auto& css : {steane_like_15(), code_22_8(), bch_31_11()}) {
    const auto aut = automorphism_group(css.c2);
    EXPECT_TRUE(verify_coset_action(css, random_element(rng, aut), BitVector(css.k())));
    for (int trial = 0; trial < 50; ++trial) {
      ASSERT_TRUE(verify_coset_action(css, random_element(rng, aut), testing::random_vector(rng, css.k())));
    }
  }
}

TEST(CosetAction, CorruptedMatrixIsRejected) {
  const auto css = steane_like_15();
  const auto g = automorphism_group(css.c2).generators().front();
  const auto bad = label_action(css, g).with_flipped(3, 2);
  bool any_false = false;
  for (std::uint64_t bits = 1; bits < 128; ++bits) any_false |= !verify_coset_action(css, g, label(bits, 7), bad);
  EXPECT_TRUE(any_false);
  // Entry (3, 2) only matters for labels with beta_2 = 1.
  EXPECT_FALSE(verify_coset_action(css, g, label(1U << 2, 7), bad));
}

TEST(TransversalCnot, MatchesBlockForm) {
  const auto c = transversal_cnot(1, CnotDirection::first_controls);
  EXPECT_EQ(c.m, BitMatrix::from_strings({"10", "11"}));
  std::mt19937_64 rng(3);
  for (std::size_t k = 1; k <= 9; ++k) {
    const auto b1 = testing::random_vector(rng, k);
    const auto b2 = testing::random_vector(rng, k);
    auto sum = b1;
    sum ^= b2;
    EXPECT_EQ(apply_logical(transversal_cnot(k, CnotDirection::first_controls), b1, b2), b1.concat(sum));
    EXPECT_EQ(apply_logical(transversal_cnot(k, CnotDirection::second_controls), b1, b2), sum.concat(b2));
    for (auto dir : {CnotDirection::first_controls, CnotDirection::second_controls}) {
      const auto m = transversal_cnot(k, dir).m;
      EXPECT_TRUE((m * m).is_identity());
    }
  }
  EXPECT_THROW(transversal_cnot(0, CnotDirection::first_controls), InvalidArgument);
}

TEST(PhaseAction, ConstantResiduesOnLength15) {
  const auto css = steane_like_15();
  const auto phases = phase_action(css);
  ASSERT_EQ(phases.residues.size(), 128U);
  EXPECT_EQ(phases.residues[0], 0);
  // Oracle: residues recomputed from the minimum-weight member of each coset.
  for (std::uint64_t bits = 0; bits < 128; ++bits) {
    const auto rep = css.logical_basis.left_apply(label(bits, 7));
    std::size_t best = 99;
    for_each_codeword(css.inner_basis, [&](const BitVector& c) {
      auto v = c;
      v ^= rep;
      best = std::min(best, v.weight());
    });
    EXPECT_EQ(phases.residues[bits], best % 4);
  }
}

TEST(PhaseAction, RejectsCodesThatAreNotDoublyEven) {
  EXPECT_THROW(phase_action(code_22_8()), InvalidArgument);
}

TEST(FourierReport, Applicability) {
  EXPECT_TRUE(fourier_report(steane_like_15()).applicable);
  EXPECT_TRUE(fourier_report(code_22_8()).applicable);
  EXPECT_TRUE(fourier_report(bch_31_11()).applicable);
  EXPECT_FALSE(fourier_report(css_from_pair(LinearCode::full(4), repetition(4))).applicable);
}

}  // namespace
}  // namespace cssaut
