#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cssaut/errors.hpp"
#include "cssaut/perm_group.hpp"

namespace cssaut {
namespace {

// Closure of the generators under composition, by breadth-first search.
std::set<Permutation> closure(std::size_t n, const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation::identity(n)};
  std::vector<Permutation> queue{Permutation::identity(n)};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      auto next = compose(queue[head], g);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return seen;
}

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 0U);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

TEST(PermGroup, TrivialGroupHasOrderOne) {
  EXPECT_EQ(PermGroup::trivial(6).order(), 1);
  EXPECT_EQ(PermGroup(4, {Permutation::identity(4)}).order(), 1);
}

TEST(PermGroup, CyclicAndSymmetricOrders) {
  for (std::size_t n = 2; n <= 12; ++n) {
    EXPECT_EQ(PermGroup(n, {Permutation::rotation(n)}).order(), n);
    BigInt factorial = 1;
    for (std::size_t i = 2; i <= n; ++i) factorial *= i;
    PermGroup sym(n, {Permutation::rotation(n), Permutation::transposition(n, 0, 1)});
    EXPECT_EQ(sym.order(), factorial) << n;
  }
}

TEST(PermGroup, AgreesWithClosureOnRandomGenerators) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    std::vector<Permutation> gens;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) {
      auto p = random_perm(rng, n);
      // Sparse generators give small groups as well as full ones.
      if (rng() % 2) {
        std::vector<std::uint32_t> images(n);
        std::iota(images.begin(), images.end(), 0U);
        std::swap(images[rng() % n], images[rng() % n]);
        p = Permutation(images);
      }
      gens.push_back(p);
    }
    const auto elements = closure(n, gens);
    ASSERT_LE(elements.size(), 40320U);
    PermGroup g(n, gens);
    EXPECT_EQ(g.order(), elements.size());
    for (int probe = 0; probe < 40; ++probe) {
      const auto p = random_perm(rng, n);
      EXPECT_EQ(g.contains(p), elements.count(p) == 1);
    }
    const auto listed = g.elements();
    EXPECT_EQ(std::set<Permutation>(listed.begin(), listed.end()), elements);
  }
}

TEST(PermGroup, CompositionLawExhaustiveAtFive) {
  std::vector<std::uint32_t> a(5);
  std::iota(a.begin(), a.end(), 0U);
  BitVector v = BitVector::from_string("10110");
  std::vector<Permutation> all;
  do all.emplace_back(a);
  while (std::next_permutation(a.begin(), a.end()));
  for (const auto& p : all) {
    for (const auto& q : all) {
      ASSERT_EQ(apply_perm(apply_perm(v, p), q), apply_perm(v, compose(p, q)));
    }
  }
}

TEST(PermGroup, OrbitsAndElementCap) {
  PermGroup g(6, {Permutation::transposition(6, 0, 1), Permutation::transposition(6, 2, 3)});
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.orbit(0), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(g.orbit(5), (std::vector<std::uint32_t>{5}));
  PermGroup big(10, {Permutation::rotation(10), Permutation::transposition(10, 0, 1)});
  EXPECT_THROW(big.elements(), CapacityError);
}

TEST(PermGroup, FromElementsMatchesGeneratedGroup) {
  PermGroup d4(4, {Permutation::rotation(4), Permutation::transposition(4, 1, 3)});
  EXPECT_EQ(d4.order(), 8);
  const auto rebuilt = group_from_elements(4, d4.elements());
  EXPECT_EQ(rebuilt.order(), 8);
  for (const auto& e : d4.elements()) EXPECT_TRUE(rebuilt.contains(e));
}

TEST(PermGroup, RejectsMismatchedDegrees) {
  EXPECT_THROW(PermGroup(4, {Permutation::identity(5)}), DimensionError);
}

}  // namespace
}  // namespace cssaut
