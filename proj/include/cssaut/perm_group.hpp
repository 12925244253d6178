#pragma once

// Permutation groups with a base and strong generating set.

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cssaut/permutation.hpp"

namespace cssaut {

using BigInt = boost::multiprecision::cpp_int;

/// A permutation group on {0..n-1}; a point x is moved to p[x].
///
/// The chain is built once by deterministic Schreier-Sims: base points are
/// the smallest points moved by the generator that needs them, and Schreier
/// generators are processed in a fixed order, so identical inputs give
/// identical chains.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> generators);
  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<std::uint32_t>& base() const noexcept { return base_; }
  /// Union of the strong generators over all levels.
  std::vector<Permutation> strong_generators() const;
  /// Basic orbit of base()[level] under the level stabilizer.
  std::vector<std::uint32_t> basic_orbit(std::size_t level) const;

  BigInt order() const;
  bool contains(const Permutation& p) const;
  /// All elements; throws CapacityError when the order exceeds `cap`.
  std::vector<Permutation> elements(std::size_t cap = 100000) const;
  /// Orbit of a point under the whole group, sorted.
  std::vector<std::uint32_t> orbit(std::uint32_t point) const;

 private:
  struct Level {
    std::uint32_t base_point = 0;
    std::vector<Permutation> gens;
    // transversal[x] maps base_point to x; empty when x is outside the orbit.
    std::vector<std::optional<Permutation>> transversal;
    std::vector<std::uint32_t> orbit;
  };

  void rebuild_orbit(Level& level) const;
  /// Sifts h; returns the level at which it stopped (levels_.size() if it passed).
  std::size_t strip(Permutation& h) const;
  void schreier_sims();

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<std::uint32_t> base_;
  std::vector<Level> levels_;
};

/// Exact order via the product of basic orbit sizes.
inline BigInt group_order(const PermGroup& g) { return g.order(); }

/// Smallest group containing every permutation in `elements`, adding only
/// elements that are not already members.
PermGroup group_from_elements(std::size_t degree, const std::vector<Permutation>& elements);

}  // namespace cssaut
