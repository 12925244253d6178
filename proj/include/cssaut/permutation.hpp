#pragma once

// Coordinate permutations.
//
// Convention used throughout: apply_perm(v, p)[i] = v[p.images[i]], and
// compose(p, q) is "p first, then q", so that
//   apply_perm(apply_perm(v, p), q) == apply_perm(v, compose(p, q)).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cssaut/gf2.hpp"

namespace cssaut {

class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidArgument unless `images` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<std::uint32_t> images);
  static Permutation identity(std::size_t n);
  /// i -> i+shift mod n.
  static Permutation rotation(std::size_t n, std::size_t shift = 1);
  static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);
  /// Parses whitespace-separated 1-based images.
  static Permutation parse(std::string_view text);

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const noexcept { return images_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  std::uint64_t order() const;
  /// Whitespace-separated 1-based images on a single line.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// p first, then q: images[i] = p[q[i]].
Permutation compose(const Permutation& p, const Permutation& q);
BitVector apply_perm(const BitVector& v, const Permutation& p);
/// 1-based images on one line; lines starting with '#' are skipped.
Permutation read_permutation_file(const std::string& path);
/// Applies the permutation to every row.
BitMatrix apply_perm(const BitMatrix& m, const Permutation& p);

}  // namespace cssaut
