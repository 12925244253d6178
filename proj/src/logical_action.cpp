#include "cssaut/logical_action.hpp"

#include <unordered_set>

#include "cssaut/automorphism.hpp"
#include "cssaut/errors.hpp"

namespace cssaut {

BitMatrix InducedAction::assembled() const {
  const std::size_t k = t1.rows();
  const std::size_t m = t3.rows();
  return BitMatrix::from_blocks(t1, t2, BitMatrix(m, k), t3);
}

LogicalMatrix::LogicalMatrix(BitMatrix matrix) : m(std::move(matrix)) {
  if (!m.is_square() || m.rows() % 2 != 0) throw InvalidArgument("logical matrix must be 2k x 2k");
  if (!inverse(m)) throw InvalidArgument("logical matrix is singular");
}

InducedAction induced_action(const CssCode& css, const Permutation& p) {
  if (p.degree() != css.n()) throw DimensionError("permutation degree does not match code length");
  if (!is_automorphism(css.c1, p)) throw InvalidArgument("permutation is not an automorphism of the outer code c1");
  if (!is_automorphism(css.c2, p)) throw InvalidArgument("permutation is not an automorphism of the inner code c2");
  const std::size_t k = css.k();
  const std::size_t m = css.inner_basis.rows();
  std::vector<BitVector> t1, t2, t3;
  for (const auto& b : css.logical_basis.row_vectors()) {
    const auto c = *css.coordinates(apply_perm(b, p));
    t1.push_back(c.slice(0, k));
    t2.push_back(c.slice(k, m));
  }
  for (const auto& b : css.inner_basis.row_vectors()) {
    const auto c = *css.coordinates(apply_perm(b, p));
    if (!c.slice(0, k).is_zero()) throw Error("permuted inner row needs logical rows; inner code not preserved");
    t3.push_back(c.slice(k, m));
  }
  InducedAction out{BitMatrix(std::move(t1), k), BitMatrix(std::move(t2), m), BitMatrix(std::move(t3), m), p};
  return out;
}

BitMatrix logical_action(const CssCode& css, const Permutation& p) { return induced_action(css, p).t1; }

BitMatrix label_action(const CssCode& css, const Permutation& p) { return logical_action(css, p).transpose(); }

std::vector<BitMatrix> logical_generators(const CssCode& css, const PermGroup& aut) {
  std::vector<BitMatrix> out;
  for (const auto& g : aut.generators()) out.push_back(label_action(css, g));
  return out;
}

bool verify_coset_action(const CssCode& css, const Permutation& p, const BitVector& beta) {
  return verify_coset_action(css, p, beta, label_action(css, p));
}

bool verify_coset_action(const CssCode& css, const Permutation& p, const BitVector& beta, const BitMatrix& label) {
  if (beta.size() != css.k()) throw DimensionError("label length does not match k");
  if (css.inner_basis.rows() > 20) throw CapacityError("inner code has more than 2^20 codewords");
  const BitVector source = css.logical_basis.left_apply(beta);
  const BitVector target = css.logical_basis.left_apply(label.apply(beta));
  std::unordered_set<BitVector, BitVectorHash> image;
  for_each_codeword(css.inner_basis, [&](const BitVector& c) {
    BitVector v = c;
    v ^= source;
    image.insert(apply_perm(v, p));
  });
  bool equal = true;
  for_each_codeword(css.inner_basis, [&](const BitVector& c) {
    if (!equal) return;
    BitVector v = c;
    v ^= target;
    equal = image.count(v) == 1;
  });
  return equal;
}

LogicalMatrix transversal_cnot(std::size_t k, CnotDirection direction) {
  if (k < 1) throw InvalidArgument("transversal CNOT needs k >= 1");
  const auto id = BitMatrix::identity(k);
  const BitMatrix zero(k, k);
  if (direction == CnotDirection::first_controls) return LogicalMatrix(BitMatrix::from_blocks(id, zero, id, id));
  return LogicalMatrix(BitMatrix::from_blocks(id, id, zero, id));
}

BitVector apply_logical(const LogicalMatrix& m, const BitVector& b1, const BitVector& b2) {
  return m.m.apply(b1.concat(b2));
}

PhaseAction phase_action(const CssCode& css) {
  if (!classify(css.c2).doubly_even) {
    throw InvalidArgument("inner code is not doubly even; wt(v) mod 4 is not constant on its cosets");
  }
  if (!css.c1.is_subcode_of(dual(css.c2))) {
    throw InvalidArgument("outer code is not orthogonal to the inner code; the phase is not defined per coset");
  }
  const std::size_t k = css.k();
  if (k + css.inner_basis.rows() > kMaxEnumerationDim) throw CapacityError("too many codewords to verify phases");
  PhaseAction out;
  out.residues.resize(std::size_t{1} << k);
  for (std::uint64_t label = 0; label < out.residues.size(); ++label) {
    BitVector beta(k);
    for (std::size_t i = 0; i < k; ++i) {
      if ((label >> i) & 1U) beta.set(i);
    }
    const BitVector rep = css.logical_basis.left_apply(beta);
    const auto residue = static_cast<std::uint8_t>(rep.weight() % 4);
    for_each_codeword(css.inner_basis, [&](const BitVector& c) {
      BitVector v = c;
      v ^= rep;
      if (v.weight() % 4 != residue) throw Error("phase residue is not constant on a coset");
    });
    out.residues[label] = residue;
  }
  return out;
}

FourierReport fourier_report(const CssCode& css) {
  FourierReport r;
  const auto d = dual(css.c2);
  r.applicable = css.c2.is_subcode_of(d) && css.c1.same_space(d);
  r.effect = r.applicable
                 ? "transversal Fourier maps the code to itself and interchanges logical X and Z operators"
                 : "outer code is not the dual of the inner code; transversal Fourier leaves the code space";
  return r;
}

}  // namespace cssaut
