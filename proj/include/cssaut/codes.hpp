#pragma once

// Binary linear codes, standard families and the CSS construction.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cssaut/gf2.hpp"
#include "cssaut/gf2poly.hpp"
#include "cssaut/permutation.hpp"

namespace cssaut {

using BigInt = boost::multiprecision::cpp_int;

/// Codes of dimension above this are not enumerated.
inline constexpr std::size_t kMaxEnumerationDim = 26;

class LinearCode {
 public:
  LinearCode() = default;
  /// The rows must be linearly independent; they are kept exactly as given.
  explicit LinearCode(BitMatrix generator);
  /// Code spanned by arbitrary rows (dependent rows allowed).
  static LinearCode from_span(const BitMatrix& rows);
  static LinearCode zero(std::size_t n);
  static LinearCode full(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return generator_.rows(); }
  const BitMatrix& generator() const noexcept { return generator_; }
  /// Reduced row-echelon basis of the code.
  const BitMatrix& echelon() const noexcept { return echelon_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(const BitVector& v) const;
  /// Row space inclusion this <= other.
  bool is_subcode_of(const LinearCode& other) const;
  bool same_space(const LinearCode& other) const { return echelon_ == other.echelon_; }

 private:
  std::size_t n_ = 0;
  BitMatrix generator_;
  BitMatrix echelon_;
  std::vector<std::size_t> pivots_;
};

LinearCode dual(const LinearCode& c);

/// Calls f(word) for all 2^rows combinations of the rows, in Gray-code order.
/// Throws CapacityError above kMaxEnumerationDim rows.
void for_each_codeword(const BitMatrix& basis, const std::function<void(const BitVector&)>& f);
/// A[w] = number of codewords of weight w, by direct enumeration.
std::vector<std::uint64_t> weight_distribution(const LinearCode& c);
/// Weight distribution of the dual computed from the code's own distribution.
std::vector<BigInt> macwilliams_transform(const std::vector<std::uint64_t>& distribution,
                                          std::size_t k);
/// Minimum nonzero weight; enumerates the smaller of C and its dual.
std::size_t minimum_distance(const LinearCode& c);

struct CodeClass {
  bool self_orthogonal = false;
  bool doubly_even = false;
  bool contains_all_one = false;
};
CodeClass classify(const LinearCode& c);

// ---------------------------------------------------------------------------
// Families.

/// Parity-check matrix whose column j-1 is the binary form of j, bit i in row i.
BitMatrix hamming_parity_check(std::size_t m);
LinearCode hamming(std::size_t m);
/// Dual of hamming(m); its generator is hamming_parity_check(m).
LinearCode simplex(std::size_t m);
LinearCode repetition(std::size_t n);

/// Monomials x_S of degree <= r as sorted variable sets, ordered by degree
/// and then lexicographically.
std::vector<std::vector<std::size_t>> rm_monomials(std::size_t r, std::size_t m);
/// Evaluation vector of a monomial on the points 0..2^m-1 (x_i = bit i).
BitVector rm_monomial_word(const std::vector<std::size_t>& monomial, std::size_t m);
LinearCode reed_muller(std::size_t r, std::size_t m);
/// x -> x+e_0, the transvection x_0 += x_1, and the cyclic shift of
/// variables; together they generate AGL(m,2) acting on 2^m points.
std::vector<Permutation> affine_generators(std::size_t m);

struct CyclicCodeSpec {
  std::size_t n = 0;
  Gf2Poly g;

  /// Throws InvalidArgument unless n is odd and g divides X^n - 1.
  void validate() const;
  std::size_t dimension() const { return n - static_cast<std::size_t>(g.degree()); }
  /// Check polynomial (X^n - 1) / g.
  Gf2Poly check_polynomial() const;
  /// Generator polynomial of the dual code: reciprocal of the check polynomial.
  CyclicCodeSpec dual() const;
};
/// Rows X^i g(X), i < n - deg g.
LinearCode cyclic(const CyclicCodeSpec& spec);

/// The narrow-sense [31,21,5] BCH code: g = m_1 m_3 for the primitive
/// polynomial X^5 + X^2 + 1.
CyclicCodeSpec bch_31_21_spec();
LinearCode bch_31_21();
LinearCode bch_dual_31_10();
/// The self-orthogonal [22,7,8] code with the fixed 7 x 22 generator.
LinearCode code_22_7();

// ---------------------------------------------------------------------------
// CSS codes.

struct CssCode {
  LinearCode c1;            // outer code
  LinearCode c2;            // inner code, c2 <= c1
  BitMatrix logical_basis;  // k rows, coset representatives
  BitMatrix inner_basis;    // basis of c2
  /// Coordinates over the stacked basis [logical_basis; inner_basis].
  std::shared_ptr<const BasisSolver> solver;

  std::size_t n() const noexcept { return c1.n(); }
  std::size_t k() const noexcept { return logical_basis.rows(); }
  /// Coordinates of v in the stacked basis, or nullopt if v is not in c1.
  std::optional<BitVector> coordinates(const BitVector& v) const { return solver->coordinates(v); }
};

/// Throws InvalidArgument when c2 is not contained in c1.
CssCode css_from_pair(const LinearCode& c1, const LinearCode& c2);
/// Same pair with another set of logical representatives.
CssCode with_logical_basis(const CssCode& css, const BitMatrix& logical);

struct CssParameters {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;  // 0 when k == 0
};
CssParameters css_parameters(const CssCode& css);

struct CosetState {
  BitVector beta;
  BitVector representative;
};
CosetState coset_state(const CssCode& css, const BitVector& beta);
/// The label beta of the coset v + c2; throws InvalidArgument if v is not in c1.
BitVector coset_label(const CssCode& css, const BitVector& v);

// ---------------------------------------------------------------------------
// Code files: "n k", then k rows of '0'/'1'; lines starting with '#' are comments.

LinearCode parse_code(std::string_view text);
std::string serialize_code(const LinearCode& c);
LinearCode read_code_file(const std::string& path);

}  // namespace cssaut
