#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cssaut/automorphism.hpp"
#include "cssaut/errors.hpp"
#include "cssaut/group_analysis.hpp"
#include "cssaut/reference_values.hpp"
#include "cssaut/stabilizer.hpp"
#include "test_util.hpp"

namespace cssaut {
namespace {

CssCode steane_like_15() { return css_from_pair(hamming(4), simplex(4)); }
CssCode code_22_8() { return css_from_pair(dual(code_22_7()), code_22_7()); }
CssCode bch_31_11() { return css_from_pair(bch_31_21(), bch_dual_31_10()); }

PermGroup joint_aut(const CssCode& css) { return intersect_aut(css.c1, css.c2); }

// |SL(n,q)| = q^{n(n-1)/2} prod_{i=2..n} (q^i - 1), a different product form.
BigInt sl_by_formula(std::size_t n, std::uint64_t q) {
  BigInt out = 1;
  for (std::size_t i = 0; i < n * (n - 1) / 2; ++i) out *= q;
  for (std::size_t i = 2; i <= n; ++i) {
    BigInt qi = 1;
    for (std::size_t t = 0; t < i; ++t) qi *= q;
    out *= qi - 1;
  }
  return out;
}

TEST(SlOrder, MatchesProductForm) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(sl_order(n, q), sl_by_formula(n, q)) << n << " " << q;
  }
  EXPECT_EQ(sl_order(2, 3), 24);
  EXPECT_EQ(sl_order(4, 2), 20160);
  EXPECT_THROW(sl_order(2, 6), InvalidArgument);
  EXPECT_THROW(sl_order(0, 2), InvalidArgument);
}

TEST(AlgebraSpan, SmallCases) {
  EXPECT_EQ(algebra_span({BitMatrix::identity(5)}).dimension(), 1U);
  // A k-cycle permutation matrix generates the group algebra of Z_k.
  for (std::size_t k = 2; k <= 9; ++k) {
    BitMatrix shift(k, k);
    for (std::size_t i = 0; i < k; ++i) shift = shift.with_flipped((i + 1) % k, i);
    EXPECT_EQ(algebra_span({shift}).dimension(), k) << k;
  }
}

TEST(AlgebraSpan, MatchesEnumeratedSpan) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 3 + trial % 2;
    std::vector<BitMatrix> gens{testing::random_invertible(rng, k)};
    if (trial % 3 == 0) gens.push_back(testing::random_invertible(rng, k));
    // Oracle: the set of all sums of group elements, grown by doubling.
    std::set<BitVector> sums{BitVector(k * k)};
    for (const auto& e : enumerate_group(gens, k)) {
      if (sums.count(e.flatten())) continue;
      std::set<BitVector> shifted;
      for (const auto& s : sums) shifted.insert(s ^ e.flatten());
      sums.insert(shifted.begin(), shifted.end());
    }
    const auto span = algebra_span(gens);
    EXPECT_EQ(std::size_t{1} << span.dimension(), sums.size()) << trial;
    for (const auto& e : enumerate_group(gens, k)) EXPECT_TRUE(span.contains(e));
  }
}

TEST(AlgebraSpan, Code22IsFull) {
  const auto css = code_22_8();
  const auto span = algebra_span(logical_generators(css, joint_aut(css)));
  EXPECT_EQ(span.dimension(), 64U);
  EXPECT_TRUE(span.full());
  EXPECT_EQ(algebra_span(reference::logical_generators_22()).dimension(), 64U);
}

TEST(Invariants, SpinOfFixedVector) {
  const auto g = BitMatrix::identity(4).with_flipped(0, 1);  // e_1 -> e_0 + e_1
  EXPECT_EQ(spin({g}, BitVector::unit(4, 0)).rows(), 1U);
  EXPECT_EQ(spin({g}, BitVector::unit(4, 1)).rows(), 2U);
  EXPECT_TRUE(is_invariant({g}, spin({g}, BitVector::unit(4, 1))));
  EXPECT_FALSE(is_invariant({g}, BitMatrix::from_strings({"0100"})));
}

TEST(Invariants, Code22Irreducible) {
  const auto css = code_22_8();
  const auto a = analyze_invariants(logical_generators(css, joint_aut(css)), 8);
  EXPECT_TRUE(a.irreducible());
  EXPECT_EQ(a.chain.block_dims(), std::vector<std::size_t>{8});
}

TEST(Invariants, Code15HasLine) {
  const auto css = steane_like_15();
  const auto gens = logical_generators(css, joint_aut(css));
  const auto a = analyze_invariants(gens, 7);
  ASSERT_FALSE(a.irreducible());
  EXPECT_EQ(a.found.front().rows(), 1U);
  ASSERT_EQ(a.decomposition.size(), 2U);
  EXPECT_EQ(a.decomposition[0].rows() + a.decomposition[1].rows(), 7U);
  for (const auto& s : a.found) EXPECT_TRUE(is_invariant(gens, s));
}

TEST(Invariants, Code31Blocks) {
  const auto css = bch_31_11();
  const auto gens = logical_generators(css, joint_aut(css));
  const auto a = analyze_invariants(gens, 11);
  auto dims = a.chain.block_dims();
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 5, 5}));
  const MatrixGroup g(11, gens, MatrixGroupOptions{.decomposition = a.decomposition});
  EXPECT_EQ(g.order(), 155);
  for (const auto& block : restricted_block_group(g, a.chain)) {
    if (block.dim() == 5) {
      // The restricted group alone is small; its algebra is not.
      EXPECT_EQ(algebra_span(block.generators()).dimension(), 25U);
    }
  }
}

TEST(Invariants, QuotientActionRejectsNonInvariant) {
  const auto g = BitMatrix::identity(3).with_flipped(1, 0);
  EXPECT_THROW(quotient_action(g, BitMatrix(0, 3), BitMatrix::from_strings({"100"})), InvalidArgument);
  const auto q = quotient_action(g, BitMatrix::from_strings({"010"}), BitMatrix::from_strings({"110", "010"}));
  EXPECT_TRUE(q.is_identity());
}

TEST(G12, TrivialLabelGroup) {
  // One logical qubit: the two CNOTs generate SL(2,2) of order 6.
  const auto gens = g12_generators(1, {BitMatrix::identity(1)});
  EXPECT_EQ(gens.size(), 2U);
  EXPECT_EQ(MatrixGroup(2, gens).order(), 6);
}

TEST(G12, Code22IsSl16) {
  const auto css = code_22_8();
  const auto g12 = build_g12(css, joint_aut(css));
  EXPECT_EQ(g12.group.order(), sl_order(16, 2));
  EXPECT_TRUE(g12.group.exact());
}

TEST(G12, Code15Structure) {
  const auto css = steane_like_15();
  G12Options options;
  options.first_block_subgroup = true;
  const auto g12 = build_g12(css, joint_aut(css), options);
  EXPECT_EQ(g12.group.order(), sl_order(12, 2) * sl_order(2, 2));
  EXPECT_TRUE(g12.group.exact());
  EXPECT_GT(g12.group.order(), BigInt(1) << 144);
  ASSERT_TRUE(g12.first_block_subgroup.has_value());
  EXPECT_EQ(g12.first_block_subgroup->order(), sl_order(6, 2));
  EXPECT_TRUE(g12.first_block_subgroup->exact());
}

TEST(G12, Code31FirstBlockSubgroup) {
  const auto css = bch_31_11();
  G12Options options;
  options.first_block_subgroup = true;
  const auto g12 = build_g12(css, joint_aut(css), options);
  ASSERT_TRUE(g12.first_block_subgroup.has_value());
  EXPECT_EQ(g12.first_block_subgroup->order(), sl_order(5, 2) * sl_order(5, 2));
  EXPECT_GT(g12.group.order(), BigInt(1) << 199);
}

TEST(G12, ContainsTransvectionBlocks) {
  // (I A; 0 I) for A a sum of label matrices lies in the two-block group.
  const auto css = steane_like_15();
  const auto g12 = build_g12(css, joint_aut(css));
  const auto span = algebra_span(g12.label_generators);
  std::mt19937_64 rng(3);
  const auto id = BitMatrix::identity(7);
  const BitMatrix zero(7, 7);
  for (int t = 0; t < 20; ++t) {
    BitMatrix a(7, 7);
    for (const auto& b : span.basis) {
      if (rng() & 1) a = a + b;
    }
    EXPECT_TRUE(g12.group.contains(BitMatrix::from_blocks(id, a, zero, id)));
    EXPECT_TRUE(g12.group.contains(BitMatrix::from_blocks(id, zero, a, id)));
  }
  // Outside the algebra the block is not reachable.
  for (std::size_t r = 0; r < 7; ++r) {
    for (std::size_t c = 0; c < 7; ++c) {
      const auto e = BitMatrix(7, 7).with_flipped(r, c);
      if (!span.contains(e)) {
        EXPECT_FALSE(g12.group.contains(BitMatrix::from_blocks(id, e, zero, id)));
        return;
      }
    }
  }
}

void expect_published_generators_reachable(const CssCode& css, const std::vector<BitMatrix>& published) {
  const auto aut = joint_aut(css);
  const auto labels = logical_generators(css, aut);
  const std::size_t k = css.k();
  const MatrixGroup computed(k, labels);
  const MatrixGroup printed(k, published);
  EXPECT_EQ(computed.order(), printed.order());
  const auto x = find_conjugator(enumerate_group(labels, k), computed, published);
  ASSERT_TRUE(x.has_value());
  // After the basis change the printed matrices are members.
  const auto rebased = rebase_logical(css, *x);
  const MatrixGroup after(k, logical_generators(rebased, aut));
  EXPECT_EQ(after.order(), printed.order());
  for (const auto& m : published) EXPECT_TRUE(after.contains(m));
}

TEST(Conjugacy, PublishedGenerators15) {
  expect_published_generators_reachable(steane_like_15(), reference::logical_generators_15());
}

TEST(Conjugacy, PublishedGenerators22) {
  expect_published_generators_reachable(code_22_8(), reference::logical_generators_22());
}

TEST(Conjugacy, NoConjugatorForForeignMatrix) {
  const auto css = code_22_8();
  const auto labels = logical_generators(css, joint_aut(css));
  const MatrixGroup g(8, labels);
  // An element of order 2 with a 7-dimensional fixed space is a transvection;
  // the irreducible group of order 336 contains none.
  const auto t = BitMatrix::identity(8).with_flipped(0, 1);
  EXPECT_FALSE(find_conjugator(enumerate_group(labels, 8), g, {t}).has_value());
}

TEST(Stabilizer, SymplecticImagesMatchPublishedGroup) {
  const auto code = read_stabilizer_file(testing::data_path("stab_8_3_3.stab"));
  const auto aut = stab_aut_group(code);
  std::vector<BitMatrix> images;
  for (const auto& p : aut.generators()) images.push_back(stab_symplectic_rep(code, p));
  const MatrixGroup computed(6, images);
  const MatrixGroup printed(6, reference::symplectic_generators_8());
  EXPECT_EQ(computed.order(), 56);
  EXPECT_EQ(printed.order(), 56);
  for (const auto& m : reference::symplectic_generators_8()) EXPECT_TRUE(computed.contains(m));
  for (const auto& m : images) EXPECT_TRUE(printed.contains(m));
}

TEST(Families, Cyclic31Blocks) {
  const auto s = cyclic_block_structure(bch_31_21_spec(), bch_31_21_spec().dual());
  EXPECT_EQ(s.factor_degrees(), (std::vector<std::size_t>{5, 5, 1}));
  EXPECT_EQ(s.h.degree(), 11);
  for (const auto& b : s.blocks) {
    EXPECT_TRUE(b.spanning_possible);
    // The shift generates the field GF(2^d) on each block.
    EXPECT_EQ(b.shift_algebra_dim, b.degree);
  }
  EXPECT_THROW(cyclic_block_structure(bch_31_21_spec().dual(), bch_31_21_spec()), InvalidArgument);
}

TEST(Families, RmBlockCheck) {
  EXPECT_TRUE(rm_block_check(1, 1, 3));
  EXPECT_TRUE(rm_block_check(1, 2, 4));
  EXPECT_TRUE(rm_block_check(0, 1, 4));
  EXPECT_THROW(rm_block_check(2, 2, 3), InvalidArgument);
}

}  // namespace
}  // namespace cssaut
