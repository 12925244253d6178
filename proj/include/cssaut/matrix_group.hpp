#pragma once

// Matrix groups over GF(2) acting on column vectors, with a stabilizer chain
// over points of V (vectors, x -> g x) and of its dual V* (functionals,
// f -> g^{-T} f).
//
// The chain is built by randomized Schreier-Sims, which only ever produces
// subgroups. The order is reported as exact when it reaches a proven upper
// bound, or after a deterministic Schreier-generator check completes the
// chain; otherwise it is a lower bound and exact() is false.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cssaut/gf2.hpp"
#include "cssaut/perm_group.hpp"

namespace cssaut {

/// |GL(n, 2)| = |SL(n, 2)|.
BigInt gl2_order(std::size_t n);

struct BasePoint {
  BitVector v;
  bool dual = false;  // true: a functional, acted on by g^{-T}
};

struct MatrixGroupOptions {
  /// Points stabilized first, in order. The standard basis is appended as
  /// needed so that the base always determines an element.
  std::vector<BasePoint> base;
  /// Row bases of subspaces whose direct sum is V, each invariant under the
  /// generators (verified). Gives the bound prod |GL(dim)| and adapted base
  /// vectors with small orbits.
  std::vector<BitMatrix> decomposition;
  std::size_t orbit_budget = std::size_t{1} << 23;  // total stored orbit points
  std::size_t verify_budget = 4'000'000;            // Schreier generators checked
  std::size_t patience = 48;                        // consecutive trivial sifts before giving up
  std::uint64_t seed = 0x5EED;
};

class MatrixGroup {
 public:
  MatrixGroup() = default;
  /// Generators act on column vectors of length dim (dim <= 32); each must be
  /// invertible. Throws CapacityError when the orbit budget is exceeded.
  MatrixGroup(std::size_t dim, std::vector<BitMatrix> generators, MatrixGroupOptions options = {});

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<BitMatrix>& generators() const noexcept { return generators_; }
  BigInt order() const;
  BigInt upper_bound() const { return bound_; }
  bool exact() const noexcept { return exact_; }
  /// How exactness was established: "bound", "schreier" or "randomized".
  const std::string& certificate() const noexcept { return certificate_; }

  /// Sifts m through the chain; reliable when exact().
  bool contains(const BitMatrix& m) const;
  std::size_t base_length() const noexcept { return levels_.size(); }
  const BasePoint& base_point(std::size_t level) const { return base_.at(level); }
  std::size_t orbit_size(std::size_t level) const { return levels_.at(level).orbit.size(); }
  /// Strong generators fixing the first `level` base points.
  std::vector<BitMatrix> stabilizer_generators(std::size_t level) const;
  /// Product of the orbit sizes from `level` on.
  BigInt stabilizer_order(std::size_t level) const;

 private:
  struct Packed {
    std::vector<std::uint32_t> col;  // columns of M
    std::vector<std::uint32_t> inv;  // columns of M^{-1}
  };
  struct Node {
    std::uint64_t parent;
    std::uint32_t gen;
  };
  struct Level {
    std::uint64_t point;
    std::vector<std::uint32_t> gens;
    std::vector<std::uint64_t> orbit;
    std::unordered_map<std::uint64_t, Node> tree;
  };

  Packed pack(const BitMatrix& m) const;
  BitMatrix unpack(const Packed& p) const;
  Packed identity() const;
  Packed mul(const Packed& a, const Packed& b) const;
  static Packed invert(const Packed& a) { return Packed{a.inv, a.col}; }
  bool is_identity(const Packed& a) const;
  std::uint64_t act(const Packed& g, std::uint64_t point) const;
  std::uint64_t encode(const BasePoint& p) const;

  /// Sifts from level `from`; returns the level where it stopped.
  std::size_t sift(Packed& g, std::size_t from = 0) const;
  Packed transversal(const Level& level, std::uint64_t x) const;
  void add_strong(const Packed& h, std::size_t level);
  void extend_orbit(Level& level, std::size_t first_new_gen);
  void randomized(std::size_t patience, std::uint64_t seed);
  bool deterministic_completion(std::size_t budget);

  std::size_t dim_ = 0;
  std::vector<BitMatrix> generators_;
  std::vector<BasePoint> base_;
  std::vector<Packed> strong_;
  std::vector<Packed> strong_inv_;
  std::vector<Level> levels_;
  BigInt bound_ = 1;
  bool exact_ = false;
  std::string certificate_ = "randomized";
  std::size_t orbit_budget_ = 0;
  std::size_t stored_points_ = 0;
};

/// All elements by closure under the generators; throws CapacityError past cap.
std::vector<BitMatrix> enumerate_group(const std::vector<BitMatrix>& generators, std::size_t dim,
                                       std::size_t cap = 200000);

}  // namespace cssaut
