#include <gtest/gtest.h>

#include <random>

#include "cssaut/errors.hpp"
#include "cssaut/stabilizer.hpp"
#include "test_util.hpp"

namespace cssaut {
namespace {

StabilizerCode fixture() { return read_stabilizer_file(testing::data_path("stab_8_3_3.stab")); }

// Standard code on n qubits (Z on the first n-k, logical pairs on the rest)
// moved by random symplectic transvections v -> v + <v,h> h.
StabilizerCode random_stabilizer(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<Gf4Vector> s, lx, lz;
  for (std::size_t i = 0; i < n; ++i) {
    Gf4Vector x(n), z(n);
    x = Gf4Vector(BitVector::unit(n, i), BitVector(n));
    z = Gf4Vector(BitVector(n), BitVector::unit(n, i));
    if (i < n - k) {
      s.push_back(z);
    } else {
      lx.push_back(x);
      lz.push_back(z);
    }
  }
  for (int t = 0; t < 12; ++t) {
    const auto h = Gf4Vector(testing::random_vector(rng, n), testing::random_vector(rng, n));
    for (auto* group : {&s, &lx, &lz}) {
      for (auto& v : *group) {
        if (symplectic_inner(v, h)) v ^= h;
      }
    }
  }
  return load_stabilizer(s, lx, lz);
}

TEST(Gf4Vector, EncodingAndParsing) {
  const auto v = Gf4Vector::parse("01wW");
  EXPECT_EQ(v.symbol(0), 0U);
  EXPECT_EQ(v.symbol(1), 1U);
  EXPECT_EQ(v.symbol(2), 2U);
  EXPECT_EQ(v.symbol(3), 3U);
  EXPECT_EQ(v.to_string(), "01wW");
  EXPECT_EQ(v.weight(), 3U);
  EXPECT_EQ(Gf4Vector::from_binary(v.binary()), v);
  EXPECT_THROW(Gf4Vector::parse("01x"), ParseError);
}

TEST(Gf4Vector, SymplecticInner) {
  EXPECT_TRUE(symplectic_inner(Gf4Vector::parse("1"), Gf4Vector::parse("w")));
  EXPECT_TRUE(symplectic_inner(Gf4Vector::parse("W"), Gf4Vector::parse("1")));
  EXPECT_FALSE(symplectic_inner(Gf4Vector::parse("11"), Gf4Vector::parse("ww")));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Gf4Vector v(testing::random_vector(rng, 9), testing::random_vector(rng, 9));
    EXPECT_FALSE(symplectic_inner(v, v));
  }
  EXPECT_THROW(symplectic_inner(Gf4Vector::parse("1"), Gf4Vector::parse("11")), DimensionError);
}

TEST(StabilizerCode, FixtureLoads) {
  const auto s = fixture();
  EXPECT_EQ(s.n, 8U);
  EXPECT_EQ(s.k, 3U);
  for (std::size_t i = 0; i < s.stabilizers.size(); ++i) {
    for (std::size_t j = 0; j < s.stabilizers.size(); ++j) {
      EXPECT_FALSE(symplectic_inner(s.stabilizers[i], s.stabilizers[j]));
    }
  }
  EXPECT_EQ(parse_stabilizer(serialize_stabilizer(s)).stabilizers, s.stabilizers);
}

TEST(StabilizerCode, FlippedSymbolNamesThePair) {
  auto s = fixture();
  auto rows = s.stabilizers;
  rows[0] = Gf4Vector::parse("w0w0Ww1W");  // first symbol 1 -> w
  try {
    load_stabilizer(rows, s.logical_x, s.logical_z);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("S[0]/"), std::string::npos) << e.what();
  }
}

TEST(StabilizerCode, TrivialAndTinyCodes) {
  const auto one = load_stabilizer({}, {Gf4Vector::parse("1")}, {Gf4Vector::parse("w")});
  EXPECT_EQ(one.n, 1U);
  const auto two = load_stabilizer({Gf4Vector::parse("11")}, {Gf4Vector::parse("10")}, {Gf4Vector::parse("ww")});
  EXPECT_EQ(stab_aut_group(two).order(), 2);
  EXPECT_EQ(stab_brute_force_aut(two).order(), 2);
  EXPECT_THROW(load_stabilizer({Gf4Vector::parse("11")}, {Gf4Vector::parse("11")}, {Gf4Vector::parse("ww")}),
               InvalidArgument);
}

TEST(StabilizerCode, ParseErrors) {
  EXPECT_THROW(parse_stabilizer("10\n---\n01\n"), ParseError);
  try {
    parse_stabilizer("# c\n1q\n---\n---\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
  }
}

TEST(StabilizerAut, FixtureOrderAndMembership) {
  const auto s = fixture();
  const auto g = stab_aut_group(s);
  EXPECT_EQ(g.order(), 56);
  EXPECT_EQ(stab_brute_force_aut(s).order(), 56);
  EXPECT_TRUE(stab_is_automorphism(s, Permutation::identity(8)));
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = a + 1; b < 8; ++b) {
      EXPECT_FALSE(stab_is_automorphism(s, Permutation::transposition(8, a, b)));
    }
  }
}

TEST(StabilizerAut, AffineLabelingExists) {
  const auto g = stab_aut_group(fixture());
  const auto labels = affine_labeling(g);
  ASSERT_EQ(labels.size(), 8U);
  std::vector<std::uint32_t> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t i = 0; i < 8; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(StabilizerAut, MatchesBruteForceOnRandomCodes) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const std::size_t k = rng() % n;
    const auto s = random_stabilizer(rng, n, k);
    const auto brute = stab_brute_force_aut(s);
    const auto fast = stab_aut_group(s);
    ASSERT_EQ(fast.order(), brute.order()) << serialize_stabilizer(s);
    for (const auto& p : fast.generators()) EXPECT_TRUE(brute.contains(p));
  }
}

TEST(SymplecticRep, PropertiesOnFixture) {
  const auto s = fixture();
  const auto g = stab_aut_group(s);
  EXPECT_TRUE(stab_symplectic_rep(s, Permutation::identity(8)).is_identity());
  for (const auto& p : g.elements()) {
    const auto m = stab_symplectic_rep(s, p);
    EXPECT_TRUE(is_symplectic(m));
    EXPECT_TRUE(m.block(0, 3, 3, 3).is_zero());
  }
  std::mt19937_64 rng(8);
  const auto all = g.elements();
  for (int t = 0; t < 30; ++t) {
    const auto& p = all[rng() % all.size()];
    const auto& q = all[rng() % all.size()];
    EXPECT_EQ(stab_symplectic_rep(s, compose(p, q)), stab_symplectic_rep(s, p) * stab_symplectic_rep(s, q));
  }
  EXPECT_THROW(stab_symplectic_rep(s, Permutation::transposition(8, 0, 1)), InvalidArgument);
}

}  // namespace
}  // namespace cssaut
