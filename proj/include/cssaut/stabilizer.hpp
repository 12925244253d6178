#pragma once

// Additive GF(4) stabilizer codes and their permutation automorphisms.
//
// A symbol is stored as an (x, z) bit pair: 0 = (0,0), 1 = (1,0) = X,
// w = (0,1) = Z, W = (1,1) = Y. Text uses the characters 0 1 w W.

#include <string>
#include <string_view>
#include <vector>

#include "cssaut/gf2.hpp"
#include "cssaut/perm_group.hpp"

namespace cssaut {

class Gf4Vector {
 public:
  Gf4Vector() = default;
  explicit Gf4Vector(std::size_t n) : x_(n), z_(n) {}
  Gf4Vector(BitVector x, BitVector z);
  /// Throws ParseError on characters outside {0, 1, w, W}.
  static Gf4Vector parse(std::string_view text);

  std::size_t size() const noexcept { return x_.size(); }
  const BitVector& x() const noexcept { return x_; }
  const BitVector& z() const noexcept { return z_; }
  /// Symbol at i as 0..3 with 1 = X, 2 = Z (w), 3 = Y (W).
  unsigned symbol(std::size_t i) const noexcept { return (x_.get(i) ? 1U : 0U) | (z_.get(i) ? 2U : 0U); }
  std::size_t weight() const;
  bool is_zero() const noexcept { return x_.is_zero() && z_.is_zero(); }
  /// The 2n-bit image (x | z).
  BitVector binary() const { return x_.concat(z_); }
  static Gf4Vector from_binary(const BitVector& bits);

  Gf4Vector& operator^=(const Gf4Vector& o);
  std::string to_string() const;
  friend bool operator==(const Gf4Vector&, const Gf4Vector&) = default;
  friend auto operator<=>(const Gf4Vector&, const Gf4Vector&) = default;

 private:
  BitVector x_;
  BitVector z_;
};

/// Symplectic (trace) inner product; 0 iff the Pauli operators commute.
bool symplectic_inner(const Gf4Vector& u, const Gf4Vector& v);
Gf4Vector apply_perm(const Gf4Vector& v, const Permutation& p);

struct StabilizerCode {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Gf4Vector> stabilizers;
  std::vector<Gf4Vector> logical_x;
  std::vector<Gf4Vector> logical_z;
};

/// Validates commutation and independence; every violation is listed in the
/// InvalidArgument message.
StabilizerCode load_stabilizer(const std::vector<Gf4Vector>& stabilizers, const std::vector<Gf4Vector>& logical_x,
                               const std::vector<Gf4Vector>& logical_z);

/// Three sections (stabilizers, logical X, logical Z) separated by "---".
StabilizerCode parse_stabilizer(std::string_view text);
std::string serialize_stabilizer(const StabilizerCode& s);
StabilizerCode read_stabilizer_file(const std::string& path);

/// GF(2)-span of the stabilizer rows as 2n-bit vectors.
BitMatrix stabilizer_matrix(const StabilizerCode& s);
bool stab_is_automorphism(const StabilizerCode& s, const Permutation& p);

inline constexpr std::size_t kMaxStabSearchDegree = 16;
/// Throws CapacityError for n > 16.
PermGroup stab_aut_group(const StabilizerCode& s);
/// Exhaustive filter over S_n (n <= 8).
PermGroup stab_brute_force_aut(const StabilizerCode& s);

/// Rows are the permuted logicals (X_1..X_k, Z_1..Z_k) expressed over the
/// logicals modulo the stabilizer. Throws InvalidArgument for a non-automorphism.
BitMatrix stab_symplectic_rep(const StabilizerCode& s, const Permutation& p);
/// J = (0 I / I 0) of size 2k.
BitMatrix symplectic_form(std::size_t k);
bool is_symplectic(const BitMatrix& m);

/// Looks for a labeling of the n = 2^m coordinates by GF(2^m) under which every
/// affine map x -> ax + b is in the group. Returns labels[point] as field
/// elements in polynomial basis, or empty when none was found. Only the
/// sharply 2-transitive case (|G| = n(n-1)) is attempted.
std::vector<std::uint32_t> affine_labeling(const PermGroup& g);

}  // namespace cssaut
