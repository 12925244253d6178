#pragma once

// Dense bit-packed vectors and matrices over GF(2).
//
// Bit i of a vector lives in word i / 64 at position i % 64. Bits past the
// logical length are always zero, so word-wise comparisons and popcounts are
// exact.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cssaut {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length);

  /// Parses a string of '0'/'1' characters, index 0 first.
  static BitVector from_string(std::string_view bits);
  static BitVector unit(std::size_t length, std::size_t index);
  static BitVector ones(std::size_t length);
  /// Low `length` bits of `bits` (length <= 64).
  static BitVector from_word(std::size_t length, std::uint64_t bits);

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }

  bool get(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  bool operator[](std::size_t i) const noexcept { return get(i); }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const noexcept;
  bool is_zero() const noexcept;
  /// Inner product sum_i u_i v_i mod 2.
  bool dot(const BitVector& other) const;
  std::optional<std::size_t> first_set() const noexcept;
  /// Number of coordinates where both vectors are 1.
  std::size_t overlap(const BitVector& other) const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  /// Concatenation [this | tail].
  BitVector concat(const BitVector& tail) const;
  /// Coordinates [offset, offset + count).
  BitVector slice(std::size_t offset, std::size_t count) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  /// Value of the first 64 coordinates.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

 private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  /// Every row must have length `cols`.
  BitMatrix(std::vector<BitVector> rows, std::size_t cols);
  /// Rows given as '0'/'1' strings of equal length.
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  static BitMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return data_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const noexcept { return data_[r].get(c); }
  bool operator()(std::size_t r, std::size_t c) const noexcept { return data_[r].get(c); }
  const BitVector& row(std::size_t r) const noexcept { return data_[r]; }
  const std::vector<BitVector>& row_vectors() const noexcept { return data_; }

  BitMatrix transpose() const;
  /// Matrix product this * other.
  BitMatrix operator*(const BitMatrix& other) const;
  BitMatrix operator+(const BitMatrix& other) const;
  /// Column action A * x.
  BitVector apply(const BitVector& x) const;
  /// Row action v * A.
  BitVector left_apply(const BitVector& v) const;

  /// Rows of this followed by rows of below.
  BitMatrix stack(const BitMatrix& below) const;
  /// Columns of this followed by columns of right.
  BitMatrix hconcat(const BitMatrix& right) const;
  BitMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                  std::size_t ncols) const;
  /// Copy with one entry toggled.
  BitMatrix with_flipped(std::size_t r, std::size_t c) const;
  /// Block matrix (a b / c d) from four blocks of compatible sizes.
  static BitMatrix from_blocks(const BitMatrix& a, const BitMatrix& b,
                               const BitMatrix& c, const BitMatrix& d);

  bool is_identity() const;
  bool is_zero() const;
  bool is_square() const noexcept { return rows() == cols(); }

  /// Row-major flattening into rows()*cols() bits.
  BitVector flatten() const;
  static BitMatrix unflatten(const BitVector& bits, std::size_t rows, std::size_t cols);

  std::string to_string() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  friend std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b);

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

struct BitMatrixHash {
  std::size_t operator()(const BitMatrix& m) const noexcept;
};

struct RrefResult {
  BitMatrix reduced;                // nonzero rows first, rank() of them
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

RrefResult rref(const BitMatrix& m);
std::size_t rank(const BitMatrix& m);
/// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<BitVector> solve(const BitMatrix& a, const BitVector& b);
/// Rows form a basis of { x : M x = 0 }.
BitMatrix kernel_basis(const BitMatrix& m);
std::optional<BitMatrix> inverse(const BitMatrix& m);
/// Rows of the reduced echelon form, dropping zero rows.
BitMatrix row_space_basis(const BitMatrix& m);

/// Matrix text: one row of '0'/'1' per line, all of equal length; blank
/// lines and lines starting with '#' are skipped. Errors carry line numbers.
BitMatrix parse_matrix(std::string_view text);
BitMatrix read_matrix_file(const std::string& path);

/// Incrementally maintained echelon basis of a subspace of GF(2)^n.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t length) : length_(length) {}

  std::size_t length() const noexcept { return length_; }
  std::size_t dimension() const noexcept { return rows_.size(); }
  /// Residue of v after clearing every pivot of the basis.
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).is_zero(); }
  /// Adds v if it is independent; returns whether the span grew.
  bool insert(const BitVector& v);
  /// Fully reduced basis rows, sorted by pivot.
  BitMatrix basis() const;

 private:
  std::size_t length_;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Expresses vectors in coordinates of a fixed list of independent rows.
class BasisSolver {
 public:
  /// Throws InvalidArgument when the rows are linearly dependent.
  explicit BasisSolver(const BitMatrix& basis);

  std::size_t size() const noexcept { return count_; }
  /// Coefficients c with c * basis = v, or nullopt if v is outside the span.
  std::optional<BitVector> coordinates(const BitVector& v) const;

 private:
  std::size_t count_ = 0;
  std::vector<BitVector> reduced_;   // echelon rows spanning the same space
  std::vector<BitVector> combo_;     // reduced_[i] = combo_[i] * basis
  std::vector<std::size_t> pivots_;
};

}  // namespace cssaut
