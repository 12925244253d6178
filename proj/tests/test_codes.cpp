#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "cssaut/codes.hpp"
#include "cssaut/errors.hpp"
#include "test_util.hpp"

namespace cssaut {
namespace {

// GF(32) with modulus x^5 + x^2 + 1, elements as 5-bit integers.
std::uint32_t gf32_mul(std::uint32_t a, std::uint32_t b) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & 0x20) a ^= 0x25;
  }
  return r;
}

// Generator polynomial as the product of (X - alpha^i) over the cyclotomic
// cosets of 1 and 3, expanded with GF(32) coefficients.
std::vector<std::uint32_t> bch_generator_from_roots() {
  std::vector<std::uint32_t> powers(31);
  powers[0] = 1;
  for (int i = 1; i < 31; ++i) powers[i] = gf32_mul(powers[i - 1], 2);
  std::vector<int> exps;
  for (int s : {1, 3}) {
    for (int x = s, c = 0; c < 5; x = (2 * x) % 31, ++c) exps.push_back(x);
  }
  std::vector<std::uint32_t> poly{1};
  for (int e : exps) {
    std::vector<std::uint32_t> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] ^= poly[i];
      next[i] ^= gf32_mul(poly[i], powers[e]);
    }
    poly = next;
  }
  return poly;
}

std::vector<std::uint64_t> distribution_by_span(const LinearCode& c) {
  std::vector<std::uint64_t> d(c.n() + 1, 0);
  for (const auto& w : testing::span_by_enumeration(c.generator())) ++d[w.weight()];
  return d;
}

TEST(LinearCode, RejectsDependentRows) {
  EXPECT_THROW(LinearCode(BitMatrix::from_strings({"110", "110"})), InvalidArgument);
  EXPECT_EQ(LinearCode::from_span(BitMatrix::from_strings({"110", "110", "011"})).k(), 2U);
}

TEST(Dual, FullSpaceGivesZeroCode) {
  const auto d = dual(LinearCode::full(6));
  EXPECT_EQ(d.n(), 6U);
  EXPECT_EQ(d.k(), 0U);
}

TEST(Dual, HammingDualIsSimplexWithConstantWeight) {
  const auto d = dual(hamming(4));
  EXPECT_EQ(d.k(), 4U);
  EXPECT_TRUE(d.same_space(simplex(4)));
  const auto dist = distribution_by_span(d);
  EXPECT_EQ(dist[0], 1U);
  EXPECT_EQ(dist[8], 15U);
}

TEST(Dual, Code22_7DualContainsIt) {
  const auto c = code_22_7();
  const auto d = dual(c);
  EXPECT_EQ(d.n(), 22U);
  EXPECT_EQ(d.k(), 15U);
  EXPECT_TRUE(c.is_subcode_of(d));
  EXPECT_EQ(minimum_distance(d), 4U);
}

TEST(Dual, Involution) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = LinearCode::from_span(testing::random_matrix(rng, 1 + rng() % 8, 12));
    const auto d = dual(c);
    EXPECT_TRUE(dual(d).same_space(c));
    for (const auto& a : c.generator().row_vectors()) {
      for (const auto& b : d.generator().row_vectors()) EXPECT_FALSE(a.dot(b));
    }
  }
}

TEST(MinimumDistance, Repetition) {
  for (std::size_t n : {1U, 5U, 17U}) EXPECT_EQ(minimum_distance(repetition(n)), n);
}

TEST(MinimumDistance, NamedCodes) {
  EXPECT_EQ(minimum_distance(code_22_7()), 8U);
  EXPECT_EQ(minimum_distance(bch_dual_31_10()), 12U);
  EXPECT_EQ(minimum_distance(hamming(4)), 3U);
  EXPECT_EQ(minimum_distance(simplex(4)), 8U);
}

TEST(MinimumDistance, ZeroCodeRejected) {
  EXPECT_THROW(minimum_distance(LinearCode::zero(4)), InvalidArgument);
}

TEST(MinimumDistance, Code22_7ByExplicitSpan) {
  const auto dist = distribution_by_span(code_22_7());
  std::size_t d = 0;
  for (std::size_t w = 1; w < dist.size() && d == 0; ++w) {
    if (dist[w]) d = w;
  }
  EXPECT_EQ(d, 8U);
  EXPECT_EQ(dist, weight_distribution(code_22_7()));
}

TEST(MinimumDistance, Bch31_21ByColumnSums) {
  // d = 5 iff no 1..4 parity-check columns sum to zero and some 5 do.
  const auto h = bch_dual_31_10().generator();
  std::vector<std::uint64_t> cols;
  for (std::size_t j = 0; j < 31; ++j) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) c |= std::uint64_t{h.get(i, j)} << i;
    cols.push_back(c);
  }
  bool small = false;
  bool five = false;
  for (std::size_t a = 0; a < 31; ++a) {
    small |= cols[a] == 0;
    for (std::size_t b = a + 1; b < 31; ++b) {
      small |= (cols[a] ^ cols[b]) == 0;
      for (std::size_t c = b + 1; c < 31; ++c) {
        const auto abc = cols[a] ^ cols[b] ^ cols[c];
        small |= abc == 0;
        for (std::size_t d = c + 1; d < 31; ++d) {
          small |= (abc ^ cols[d]) == 0;
          for (std::size_t e = d + 1; e < 31 && !five; ++e) five |= (abc ^ cols[d] ^ cols[e]) == 0;
        }
      }
    }
  }
  EXPECT_FALSE(small);
  EXPECT_TRUE(five);
  EXPECT_EQ(minimum_distance(bch_31_21()), 5U);
}

TEST(MacWilliams, MatchesDirectEnumeration) {
  std::vector<LinearCode> codes{hamming(3), hamming(4), simplex(4), code_22_7(), reed_muller(1, 4),
                                repetition(9)};
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10; ++i) {
    codes.push_back(LinearCode::from_span(testing::random_matrix(rng, 1 + rng() % 10, 8 + rng() % 14)));
  }
  for (const auto& c : codes) {
    const auto predicted = macwilliams_transform(weight_distribution(c), c.k());
    const auto direct = weight_distribution(dual(c));
    ASSERT_EQ(predicted.size(), direct.size());
    for (std::size_t w = 0; w < direct.size(); ++w) EXPECT_EQ(predicted[w], BigInt(direct[w]));
  }
}

TEST(Classify, Simplex) {
  const auto cls = classify(simplex(4));
  EXPECT_TRUE(cls.self_orthogonal);
  EXPECT_TRUE(cls.doubly_even);
  for (const auto& w : testing::span_by_enumeration(simplex(4).generator())) {
    EXPECT_EQ(w.weight() % 4, 0U);
  }
}

TEST(Classify, Code22_7) {
  const auto c = code_22_7();
  const auto cls = classify(c);
  EXPECT_TRUE(cls.self_orthogonal);
  EXPECT_FALSE(cls.doubly_even);
  EXPECT_EQ(c.generator().row(6).weight(), 14U);
}

TEST(Classify, HammingContainsAllOne) {
  EXPECT_TRUE(classify(hamming(4)).contains_all_one);
  EXPECT_FALSE(classify(simplex(4)).contains_all_one);
  EXPECT_FALSE(classify(hamming(4)).self_orthogonal);
}

TEST(Families, ReedMullerParameters) {
  const auto rm03 = reed_muller(0, 3);
  EXPECT_EQ(rm03.n(), 8U);
  EXPECT_EQ(rm03.k(), 1U);
  EXPECT_EQ(minimum_distance(rm03), 8U);
  const auto rm14 = reed_muller(1, 4);
  EXPECT_EQ(rm14.n(), 16U);
  EXPECT_EQ(rm14.k(), 5U);
  const auto dist = distribution_by_span(rm14);
  EXPECT_EQ(dist[8], 30U);
  EXPECT_EQ(dist[16], 1U);
  EXPECT_EQ(minimum_distance(rm14), 8U);
  EXPECT_THROW(reed_muller(4, 3), InvalidArgument);
}

TEST(Families, ReedMullerDimensions) {
  for (std::size_t m = 1; m <= 5; ++m) {
    std::size_t expected = 0;
    std::size_t binom = 1;
    for (std::size_t r = 0; r <= m; ++r) {
      expected += binom;
      EXPECT_EQ(reed_muller(r, m).k(), expected);
      binom = binom * (m - r) / (r + 1);
    }
  }
}

TEST(Families, NestingChains) {
  for (std::size_t m : {3U, 4U, 5U}) EXPECT_TRUE(simplex(m).is_subcode_of(hamming(m)));
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::size_t r = 0; r < m; ++r) EXPECT_TRUE(reed_muller(r, m).is_subcode_of(reed_muller(r + 1, m)));
  }
}

TEST(Families, AffineGeneratorsPreserveReedMuller) {
  for (std::size_t m = 1; m <= 5; ++m) {
    for (std::size_t r = 0; r <= m; ++r) {
      const auto c = reed_muller(r, m);
      for (const auto& p : affine_generators(m)) {
        for (const auto& row : c.generator().row_vectors()) EXPECT_TRUE(c.contains(apply_perm(row, p)));
      }
    }
  }
}

TEST(Families, BchGeneratorFromRoots) {
  const auto spec = bch_31_21_spec();
  EXPECT_EQ(spec.g, Gf2Poly::parse("x^10+x^9+x^8+x^6+x^5+x^3+1"));
  const auto coeffs = bch_generator_from_roots();
  ASSERT_EQ(coeffs.size(), 11U);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    EXPECT_LE(coeffs[i], 1U);
    EXPECT_EQ(coeffs[i] == 1, spec.g.coeff(i)) << "coefficient " << i;
  }
  EXPECT_EQ(bch_31_21().k(), 21U);
}

TEST(Families, CyclicDualSpec) {
  const auto spec = bch_31_21_spec();
  EXPECT_TRUE(cyclic(spec.dual()).same_space(dual(cyclic(spec))));
  EXPECT_TRUE(bch_dual_31_10().is_subcode_of(bch_31_21()));
  const CyclicCodeSpec ham{7, Gf2Poly::parse("x^3+x+1")};
  EXPECT_EQ(cyclic(ham).k(), 4U);
  EXPECT_EQ(minimum_distance(cyclic(ham)), 3U);
  EXPECT_TRUE(cyclic(ham.dual()).same_space(dual(cyclic(ham))));
  EXPECT_THROW(cyclic({7, Gf2Poly::parse("x^2+1")}), InvalidArgument);
  EXPECT_THROW(cyclic({8, Gf2Poly::parse("x+1")}), InvalidArgument);
}

TEST(Families, CyclicShiftInvariance) {
  const auto c = bch_dual_31_10();
  const auto shift = Permutation::rotation(31);
  for (const auto& r : c.generator().row_vectors()) EXPECT_TRUE(c.contains(apply_perm(r, shift)));
}

TEST(Css, Dimensions) {
  EXPECT_EQ(css_from_pair(hamming(4), simplex(4)).k(), 7U);
  EXPECT_EQ(css_from_pair(dual(code_22_7()), code_22_7()).k(), 8U);
  EXPECT_EQ(css_from_pair(bch_31_21(), bch_dual_31_10()).k(), 11U);
  const auto c = reed_muller(1, 3);
  EXPECT_EQ(css_from_pair(c, c).k(), 0U);
  EXPECT_THROW(css_from_pair(simplex(4), hamming(4)), InvalidArgument);
}

TEST(Css, BasisPartition) {
  for (const auto& css : {css_from_pair(hamming(4), simplex(4)), css_from_pair(dual(code_22_7()), code_22_7()),
                          css_from_pair(bch_31_21(), bch_dual_31_10())}) {
    for (const auto& r : css.c2.generator().row_vectors()) EXPECT_TRUE(css.c1.contains(r));
    const auto stacked = css.logical_basis.stack(css.inner_basis);
    EXPECT_EQ(rank(stacked), css.c1.k());
    for (const auto& r : stacked.row_vectors()) EXPECT_TRUE(css.c1.contains(r));
    for (const auto& r : css.inner_basis.row_vectors()) EXPECT_TRUE(css.c2.contains(r));
  }
}

TEST(Css, LogicalBasisIsCanonical) {
  // Any generator of the same spaces gives the same basis.
  std::mt19937_64 rng(42);
  const auto a = css_from_pair(hamming(4), simplex(4));
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = testing::random_invertible(rng, 11);
    const auto c1 = LinearCode(s * hamming(4).generator());
    const auto b = css_from_pair(c1, simplex(4));
    EXPECT_EQ(a.logical_basis, b.logical_basis);
  }
}

TEST(Css, Parameters) {
  EXPECT_EQ(css_parameters(css_from_pair(hamming(4), simplex(4))).d, 3U);
  EXPECT_EQ(css_parameters(css_from_pair(dual(code_22_7()), code_22_7())).d, 4U);
  const auto p = css_parameters(css_from_pair(bch_31_21(), bch_dual_31_10()));
  EXPECT_EQ(p.n, 31U);
  EXPECT_EQ(p.k, 11U);
  EXPECT_EQ(p.d, 5U);
}

TEST(Css, ParametersAgainstSetDifference) {
  const auto css = css_from_pair(hamming(4), simplex(4));
  const auto inner = testing::span_by_enumeration(css.c2.generator());
  std::size_t best = 100;
  for (const auto& w : testing::span_by_enumeration(css.c1.generator())) {
    if (!inner.count(w)) best = std::min(best, w.weight());
  }
  EXPECT_EQ(best, css_parameters(css).d);
}

TEST(CosetState, ZeroAndUnitLabels) {
  const auto css = css_from_pair(hamming(4), simplex(4));
  EXPECT_TRUE(coset_state(css, BitVector(7)).representative.is_zero());
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(coset_state(css, BitVector::unit(7, i)).representative, css.logical_basis.row(i));
  }
  EXPECT_THROW(coset_state(css, BitVector(6)), DimensionError);
}

TEST(CosetState, DistinctLabelsGiveDistinctCosets) {
  const auto css = css_from_pair(hamming(4), simplex(4));
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const auto b1 = testing::random_vector(rng, 7);
    const auto b2 = testing::random_vector(rng, 7);
    const auto diff = coset_state(css, b1).representative ^ coset_state(css, b2).representative;
    EXPECT_EQ(css.c2.contains(diff), b1 == b2);
    // Labels are recovered from any member of the coset.
    BitVector member = coset_state(css, b1).representative;
    for (const auto& r : css.inner_basis.row_vectors()) {
      if (rng() & 1) member ^= r;
    }
    EXPECT_EQ(coset_label(css, member), b1);
  }
}

TEST(CodeFile, RoundTripIsByteIdentical) {
  for (const auto& c : {code_22_7(), hamming(4), bch_dual_31_10()}) {
    const auto text = serialize_code(c);
    EXPECT_EQ(serialize_code(parse_code(text)), text);
    EXPECT_EQ(parse_code(text).generator(), c.generator());
  }
  const std::string commented = "# comment\n3 1\n# another\n111\n";
  EXPECT_EQ(serialize_code(parse_code(commented)), "3 1\n111\n");
}

TEST(CodeFile, MalformedInputsReportLines) {
  try {
    parse_code("3 2\n110\n1a1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
  EXPECT_THROW(parse_code("3\n111\n"), ParseError);
  EXPECT_THROW(parse_code("3 2\n111\n"), ParseError);
  EXPECT_THROW(parse_code("3 1\n1111\n"), ParseError);
  EXPECT_THROW(parse_code("3 2\n111\n111\n"), ParseError);
}

TEST(CodeFile, ShippedFixturesMatchConstructors) {
  EXPECT_TRUE(read_code_file(testing::data_path("hamming_15_11.code")).same_space(hamming(4)));
  EXPECT_TRUE(read_code_file(testing::data_path("simplex_15_4.code")).same_space(simplex(4)));
  EXPECT_TRUE(read_code_file(testing::data_path("bch_31_21.code")).same_space(bch_31_21()));
  EXPECT_TRUE(read_code_file(testing::data_path("bch_31_10.code")).same_space(bch_dual_31_10()));
  EXPECT_TRUE(read_code_file(testing::data_path("dual_22_15.code")).same_space(dual(code_22_7())));
  // The [22,7] generator is kept row for row.
  EXPECT_EQ(read_code_file(testing::data_path("sd_22_7.code")).generator(), code_22_7().generator());
}

}  // namespace
}  // namespace cssaut
