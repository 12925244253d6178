#pragma once

// Action of code automorphisms and transversal gates on CSS logical states.
//
// Two conventions meet here. InducedAction is in row form: the permuted
// basis row apply_perm(b_i, p) equals sum_j T[i][j] b_j over the basis
// [logical_basis; inner_basis], which gives the zero lower-left block and
// t1(compose(p, q)) = t1(p) * t1(q).
//
// Everything acting on logical labels (coset action, CNOT matrices, groups of
// logical operations) uses column labels: beta -> L * beta with L = t1^T.
// Applying p and then q gives L(q) * L(p).

#include <cstdint>
#include <string>
#include <vector>

#include "cssaut/codes.hpp"
#include "cssaut/perm_group.hpp"

namespace cssaut {

struct InducedAction {
  BitMatrix t1;  // k x k
  BitMatrix t2;  // k x dim(c2)
  BitMatrix t3;  // dim(c2) x dim(c2)
  Permutation perm;

  /// The full block matrix (t1 t2 / 0 t3).
  BitMatrix assembled() const;
};

/// An invertible 2k x 2k matrix acting on the labels of two code blocks.
struct LogicalMatrix {
  BitMatrix m;

  LogicalMatrix() = default;
  /// Throws InvalidArgument unless m is square, even-sized and invertible.
  explicit LogicalMatrix(BitMatrix matrix);
  std::size_t dim() const noexcept { return m.rows(); }
  std::size_t k() const noexcept { return m.rows() / 2; }
  friend bool operator==(const LogicalMatrix&, const LogicalMatrix&) = default;
};

/// Throws InvalidArgument naming c1 or c2 when p does not preserve it.
InducedAction induced_action(const CssCode& css, const Permutation& p);
/// Just the logical block.
BitMatrix logical_action(const CssCode& css, const Permutation& p);
/// Column-form action on labels, t1^T.
BitMatrix label_action(const CssCode& css, const Permutation& p);
/// label_action of every generator of the group.
std::vector<BitMatrix> logical_generators(const CssCode& css, const PermGroup& aut);

inline constexpr std::size_t kMaxCosetSize = std::size_t{1} << 20;

/// Checks, as sets of vectors, that the permuted coset v_beta + c2 equals
/// the coset labeled L * beta. Throws CapacityError when |c2| > 2^20.
bool verify_coset_action(const CssCode& css, const Permutation& p, const BitVector& beta);
/// Same check against a caller-supplied label matrix L.
bool verify_coset_action(const CssCode& css, const Permutation& p, const BitVector& beta, const BitMatrix& label);

enum class CnotDirection { first_controls, second_controls };

/// (I 0 / I I) for first_controls, (I I / 0 I) for second_controls, so that
/// (b1, b2) -> (b1, b1 + b2) when the first block controls.
LogicalMatrix transversal_cnot(std::size_t k, CnotDirection direction);
/// Label pair after the matrix acts: m * (b1; b2).
BitVector apply_logical(const LogicalMatrix& m, const BitVector& b1, const BitVector& b2);

/// wt(v) mod 4 for the representative of every logical basis vector and for
/// every coset label 0..2^k-1 (index = label bits, bit i = beta_i). Requires
/// c2 doubly even and c1 = dual(c2); checks constancy on each coset.
struct PhaseAction {
  std::vector<std::uint8_t> residues;  // indexed by label
};
PhaseAction phase_action(const CssCode& css);

struct FourierReport {
  bool applicable = false;
  std::string effect;
};
FourierReport fourier_report(const CssCode& css);

}  // namespace cssaut
