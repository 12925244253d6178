#pragma once

// Structure of the logical action: algebra spans, invariant subspaces, the
// two-block group generated by automorphisms and transversal CNOTs, and its
// subgroup acting only on the first block.
//
// Matrices act on column labels (see logical_action.hpp).

#include <optional>
#include <string>
#include <vector>

#include "cssaut/codes.hpp"
#include "cssaut/logical_action.hpp"
#include "cssaut/matrix_group.hpp"

namespace cssaut {

/// |SL(n, q)| for a prime power q.
BigInt sl_order(std::size_t n, std::uint64_t q);

inline BigInt matrix_group_order(const MatrixGroup& g) { return g.order(); }

struct AlgebraSpan {
  std::size_t k = 0;
  std::vector<BitMatrix> basis;  // independent as k^2-bit vectors
  std::size_t dimension() const noexcept { return basis.size(); }
  bool full() const noexcept { return basis.size() == k * k; }
  bool contains(const BitMatrix& a) const;
};

/// Smallest space containing the generators and closed under multiplication
/// by them on either side.
AlgebraSpan algebra_span(const std::vector<BitMatrix>& generators);

/// Smallest subspace containing `seed` and mapped into itself by every
/// generator, as an echelon row basis.
BitMatrix spin(const std::vector<BitMatrix>& generators, const BitVector& seed);
bool is_invariant(const std::vector<BitMatrix>& generators, const BitMatrix& subspace);

struct InvariantChain {
  /// Row bases from the zero space up to the whole space, strictly increasing.
  std::vector<BitMatrix> subspaces;
  /// Dimensions of the successive quotients.
  std::vector<std::size_t> block_dims() const;
};

struct InvariantAnalysis {
  std::size_t dim = 0;
  /// Distinct proper nonzero invariant subspaces discovered, by dimension.
  std::vector<BitMatrix> found;
  /// Invariant subspaces whose direct sum is the whole space, when found.
  std::vector<BitMatrix> decomposition;
  InvariantChain chain;
  bool irreducible() const noexcept { return found.empty(); }
};

/// Spinning from unit vectors and from kernels of f(g) for irreducible factors
/// f of characteristic polynomials, repeated on the transposed generators
/// (whose invariant subspaces give invariant annihilators), closed under sums
/// and intersections. Finds what it finds; it is not a full submodule lattice.
InvariantAnalysis analyze_invariants(const std::vector<BitMatrix>& generators, std::size_t dim);
InvariantChain invariant_subspaces(const MatrixGroup& g);

/// Action of g on upper / lower, in a basis of complement vectors chosen from upper.
BitMatrix quotient_action(const BitMatrix& g, const BitMatrix& lower, const BitMatrix& upper);
/// The group each generator induces on every successive quotient of the chain.
std::vector<MatrixGroup> restricted_block_group(const MatrixGroup& g, const InvariantChain& chain);

/// Generators of the two-block group: both transversal CNOTs, then
/// diag(L, I) and diag(I, L) for every label matrix L.
std::vector<BitMatrix> g12_generators(std::size_t k, const std::vector<BitMatrix>& label_generators);

struct G12 {
  std::size_t k = 0;
  std::vector<BitMatrix> label_generators;
  InvariantAnalysis g1_structure;
  MatrixGroup group;
  /// First-block parts of the subgroup diag(X, I), when requested.
  std::optional<MatrixGroup> first_block_subgroup;
};

struct G12Options {
  /// Also extract the subgroup acting trivially on the second block, by
  /// stabilizing second-block vectors and second-block functionals first.
  bool first_block_subgroup = false;
  MatrixGroupOptions group;
};

/// Uses an invariant decomposition of the single-block group, lifted to both
/// blocks, for the order bound and adapted base points.
G12 build_g12(const CssCode& css, const PermGroup& aut, const G12Options& options = {});

/// Some X with X A X^{-1} in the group for every target A, found by matching
/// the first two targets against elements of the group. Needs the element list.
std::optional<BitMatrix> find_conjugator(const std::vector<BitMatrix>& elements, const MatrixGroup& group,
                                         const std::vector<BitMatrix>& targets);
/// Logical basis change turning label matrices L into X^{-1} L X.
CssCode rebase_logical(const CssCode& css, const BitMatrix& x);

struct CyclicBlock {
  Gf2Poly factor;
  std::size_t degree = 0;
  bool spanning_possible = false;   // n >= degree^2
  std::size_t shift_algebra_dim = 0;  // algebra generated by the shift on the block
};
struct CyclicBlockStructure {
  Gf2Poly h;
  std::vector<CyclicBlock> blocks;
  std::vector<std::size_t> factor_degrees() const;
};
/// spec1 is the outer code, spec2 the inner one; g2 = g1 h. Throws
/// InvalidArgument for a non-nested pair.
CyclicBlockStructure cyclic_block_structure(const CyclicCodeSpec& spec1, const CyclicCodeSpec& spec2);

/// For RM(r, m) inside RM(r+s, m) with monomials of degree r+1..r+s as logical
/// basis: every affine generator's t1 has no entries from a monomial to one of
/// higher degree. Requires 0 <= r < r+s <= m <= 5.
bool rm_block_check(std::size_t r, std::size_t s, std::size_t m);

}  // namespace cssaut
