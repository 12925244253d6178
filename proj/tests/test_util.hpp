#pragma once

// Shared helpers for the unit tests: seeded random objects and small
// brute-force oracles that do not go through the library's elimination code.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cssaut/gf2.hpp"

namespace cssaut::testing {

inline BitVector random_vector(std::mt19937_64& rng, std::size_t n) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() & 1) v.set(i);
  }
  return v;
}

inline BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < r; ++i) rows.push_back(random_vector(rng, c));
  return BitMatrix(std::move(rows), c);
}

/// Every vector of the row span, by enumerating all 2^rows combinations.
inline std::set<BitVector> span_by_enumeration(const BitMatrix& m) {
  std::set<BitVector> out;
  const std::size_t r = m.rows();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
    BitVector v(m.cols());
    for (std::size_t i = 0; i < r; ++i) {
      if ((mask >> i) & 1U) v ^= m.row(i);
    }
    out.insert(v);
  }
  return out;
}

/// log2 of the span size from enumeration.
inline std::size_t rank_by_enumeration(const BitMatrix& m) {
  std::size_t size = span_by_enumeration(m).size();
  std::size_t r = 0;
  while (size > 1) {
    size >>= 1;
    ++r;
  }
  return r;
}

/// Entry-by-entry product, independent of BitMatrix::operator*.
inline BitMatrix naive_product(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows(), b.cols());
  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BitVector r(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
      bool s = false;
      for (std::size_t t = 0; t < a.cols(); ++t) s ^= a.get(i, t) && b.get(t, j);
      if (s) r.set(j);
    }
    rows.push_back(r);
  }
  return BitMatrix(std::move(rows), b.cols());
}

inline BitMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    BitMatrix m = random_matrix(rng, n, n);
    if (n <= 8 ? rank_by_enumeration(m) == n : inverse(m).has_value()) return m;
  }
}

inline std::string data_path(const std::string& name) {
  return std::string(CSSAUT_DATA_DIR) + "/" + name;
}

}  // namespace cssaut::testing
