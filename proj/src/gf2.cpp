#include "cssaut/gf2.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "cssaut/errors.hpp"

namespace cssaut {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

void check_same_length(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("bit vector length mismatch: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
}

}  // namespace

BitVector::BitVector(std::size_t length) : length_(length), words_(word_count(length), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw ParseError(std::string("invalid bit character '") + bits[i] + "'");
    }
  }
  return v;
}

BitVector BitVector::unit(std::size_t length, std::size_t index) {
  BitVector v(length);
  v.set(index);
  return v;
}

BitVector BitVector::ones(std::size_t length) {
  BitVector v(length);
  for (auto& w : v.words_) w = ~std::uint64_t{0};
  if (length % 64 != 0) v.words_.back() &= (std::uint64_t{1} << (length % 64)) - 1;
  return v;
}

BitVector BitVector::from_word(std::size_t length, std::uint64_t bits) {
  if (length > 64) throw DimensionError("from_word supports at most 64 bits");
  BitVector v(length);
  if (length > 0) {
    v.words_[0] = length == 64 ? bits : bits & ((std::uint64_t{1} << length) - 1);
  }
  return v;
}

std::size_t BitVector::weight() const noexcept {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool BitVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitVector::dot(const BitVector& other) const {
  check_same_length(*this, other);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

std::size_t BitVector::overlap(const BitVector& other) const {
  check_same_length(*this, other);
  std::size_t w = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    w += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return w;
}

std::optional<std::size_t> BitVector::first_set() const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return std::nullopt;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  check_same_length(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  check_same_length(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVector BitVector::concat(const BitVector& tail) const {
  BitVector out(length_ + tail.length_);
  for (std::size_t i = 0; i < length_; ++i) {
    if (get(i)) out.set(i);
  }
  for (std::size_t i = 0; i < tail.length_; ++i) {
    if (tail.get(i)) out.set(length_ + i);
  }
  return out;
}

BitVector BitVector::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > length_) throw DimensionError("slice out of range");
  BitVector out(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (get(offset + i)) out.set(i);
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (auto c = a.length_ <=> b.length_; c != 0) return c;
  return a.words_ <=> b.words_;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
  std::size_t h = v.size() * 0x9E3779B97F4A7C15ULL;
  for (auto w : v.words()) h = (h ^ w) * 0x100000001B3ULL + (h >> 29);
  return h;
}

// ---------------------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), data_(rows, BitVector(cols)) {}

BitMatrix::BitMatrix(std::vector<BitVector> rows, std::size_t cols)
    : cols_(cols), data_(std::move(rows)) {
  for (const auto& r : data_) {
    if (r.size() != cols_) throw DimensionError("matrix row has wrong length");
  }
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  if (rows.empty()) return {};
  std::vector<BitVector> data;
  data.reserve(rows.size());
  for (const auto& r : rows) data.push_back(BitVector::from_string(r));
  const std::size_t cols = data.front().size();
  return BitMatrix(std::move(data), cols);
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].set(i);
  return m;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    const auto& row = data_[r];
    for (std::size_t c = 0; c < cols_; ++c) {
      if (row.get(c)) t.data_[c].set(r);
    }
  }
  return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
  if (cols_ != other.rows()) throw DimensionError("matrix product shape mismatch");
  BitMatrix out(rows(), other.cols_);
  for (std::size_t r = 0; r < rows(); ++r) out.data_[r] = other.left_apply(data_[r]);
  return out;
}

BitMatrix BitMatrix::operator+(const BitMatrix& other) const {
  if (rows() != other.rows() || cols_ != other.cols_) {
    throw DimensionError("matrix sum shape mismatch");
  }
  BitMatrix out = *this;
  for (std::size_t r = 0; r < rows(); ++r) out.data_[r] ^= other.data_[r];
  return out;
}

BitVector BitMatrix::apply(const BitVector& x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
  BitVector out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (data_[r].dot(x)) out.set(r);
  }
  return out;
}

BitVector BitMatrix::left_apply(const BitVector& v) const {
  if (v.size() != rows()) throw DimensionError("vector-matrix shape mismatch");
  BitVector out(cols_);
  const auto words = v.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      const auto i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      out ^= data_[i];
      bits &= bits - 1;
    }
  }
  return out;
}

BitMatrix BitMatrix::stack(const BitMatrix& below) const {
  if (rows() == 0) return below;
  if (below.rows() == 0) return *this;
  if (cols_ != below.cols_) throw DimensionError("stack column mismatch");
  auto rows_out = data_;
  rows_out.insert(rows_out.end(), below.data_.begin(), below.data_.end());
  return BitMatrix(std::move(rows_out), cols_);
}

BitMatrix BitMatrix::hconcat(const BitMatrix& right) const {
  if (rows() != right.rows()) throw DimensionError("hconcat row mismatch");
  std::vector<BitVector> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) out.push_back(data_[r].concat(right.data_[r]));
  return BitMatrix(std::move(out), cols_ + right.cols_);
}

BitMatrix BitMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                           std::size_t ncols) const {
  if (row0 + nrows > rows() || col0 + ncols > cols_) throw DimensionError("block out of range");
  std::vector<BitVector> out;
  out.reserve(nrows);
  for (std::size_t r = 0; r < nrows; ++r) out.push_back(data_[row0 + r].slice(col0, ncols));
  return BitMatrix(std::move(out), ncols);
}

BitMatrix BitMatrix::with_flipped(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols_) throw DimensionError("entry out of range");
  BitMatrix out = *this;
  out.data_[r].flip(c);
  return out;
}

BitMatrix BitMatrix::from_blocks(const BitMatrix& a, const BitMatrix& b, const BitMatrix& c,
                                 const BitMatrix& d) {
  return a.hconcat(b).stack(c.hconcat(d));
}

bool BitMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (data_[r] != BitVector::unit(cols_, r)) return false;
  }
  return true;
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BitVector& r) { return r.is_zero(); });
}

BitVector BitMatrix::flatten() const {
  BitVector out(rows() * cols_);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (data_[r].get(c)) out.set(r * cols_ + c);
    }
  }
  return out;
}

BitMatrix BitMatrix::unflatten(const BitVector& bits, std::size_t rows, std::size_t cols) {
  if (bits.size() != rows * cols) throw DimensionError("unflatten size mismatch");
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (bits.get(r * cols + c)) m.data_[r].set(c);
    }
  }
  return m;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (const auto& r : data_) {
    s += r.to_string();
    s += '\n';
  }
  return s;
}

std::strong_ordering operator<=>(const BitMatrix& a, const BitMatrix& b) {
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  return a.data_ <=> b.data_;
}

std::size_t BitMatrixHash::operator()(const BitMatrix& m) const noexcept {
  std::size_t h = m.cols();
  BitVectorHash vh;
  for (const auto& r : m.row_vectors()) h = h * 31 + vh(r);
  return h;
}

// ---------------------------------------------------------------------------

RrefResult rref(const BitMatrix& m) {
  std::vector<BitVector> rows = m.row_vectors();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    std::size_t p = next;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
    }
    pivots.push_back(c);
    ++next;
  }
  RrefResult result;
  result.rank = pivots.size();
  result.pivots = std::move(pivots);
  result.reduced = BitMatrix(std::move(rows), m.cols());
  return result;
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

std::optional<BitVector> solve(const BitMatrix& a, const BitVector& b) {
  if (b.size() != a.rows()) throw DimensionError("solve: right-hand side length mismatch");
  // Eliminate on the augmented matrix [A | b].
  std::vector<BitVector> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    BitVector aug = a.row(r).concat(BitVector(1));
    if (b.get(r)) aug.set(a.cols());
    rows.push_back(std::move(aug));
  }
  const auto red = rref(BitMatrix(std::move(rows), a.cols() + 1));
  BitVector x(a.cols());
  for (std::size_t i = 0; i < red.rank; ++i) {
    if (red.pivots[i] == a.cols()) return std::nullopt;
    if (red.reduced.get(i, a.cols())) x.set(red.pivots[i]);
  }
  return x;
}

BitMatrix kernel_basis(const BitMatrix& m) {
  const auto red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector x(m.cols());
    x.set(free);
    for (std::size_t i = 0; i < red.rank; ++i) {
      if (red.reduced.get(i, free)) x.set(red.pivots[i]);
    }
    basis.push_back(std::move(x));
  }
  return BitMatrix(std::move(basis), m.cols());
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const auto red = rref(m.hconcat(BitMatrix::identity(n)));
  if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) return std::nullopt;
  return red.reduced.block(0, n, n, n);
}

BitMatrix row_space_basis(const BitMatrix& m) {
  const auto red = rref(m);
  return red.reduced.block(0, 0, red.rank, m.cols());
}

// ---------------------------------------------------------------------------

BitVector EchelonBasis::reduce(BitVector v) const {
  if (v.size() != length_) throw DimensionError("echelon basis length mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v.get(pivots_[i])) v ^= rows_[i];
  }
  return v;
}

bool EchelonBasis::insert(const BitVector& v) {
  BitVector r = reduce(v);
  const auto p = r.first_set();
  if (!p) return false;
  // Keep the basis fully reduced so that reduce() is a single pass.
  for (auto& row : rows_) {
    if (row.get(*p)) row ^= r;
  }
  const auto pos = static_cast<std::size_t>(
      std::lower_bound(pivots_.begin(), pivots_.end(), *p) - pivots_.begin());
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), *p);
  return true;
}

BitMatrix EchelonBasis::basis() const { return BitMatrix(rows_, length_); }

BasisSolver::BasisSolver(const BitMatrix& basis) : count_(basis.rows()) {
  for (std::size_t i = 0; i < count_; ++i) {
    BitVector v = basis.row(i);
    BitVector combo = BitVector::unit(count_, i);
    for (std::size_t j = 0; j < reduced_.size(); ++j) {
      if (v.get(pivots_[j])) {
        v ^= reduced_[j];
        combo ^= combo_[j];
      }
    }
    const auto p = v.first_set();
    if (!p) throw InvalidArgument("basis rows are linearly dependent");
    for (std::size_t j = 0; j < reduced_.size(); ++j) {
      if (reduced_[j].get(*p)) {
        reduced_[j] ^= v;
        combo_[j] ^= combo;
      }
    }
    reduced_.push_back(std::move(v));
    combo_.push_back(std::move(combo));
    pivots_.push_back(*p);
  }
}

std::optional<BitVector> BasisSolver::coordinates(const BitVector& v) const {
  BitVector rest = v;
  BitVector coeff(count_);
  for (std::size_t j = 0; j < reduced_.size(); ++j) {
    if (rest.get(pivots_[j])) {
      rest ^= reduced_[j];
      coeff ^= combo_[j];
    }
  }
  if (!rest.is_zero()) return std::nullopt;
  return coeff;
}

// ---------------------------------------------------------------------------

BitMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<BitVector> rows;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    try {
      rows.push_back(BitVector::from_string(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), number);
    }
    if (rows.back().size() != rows.front().size()) throw ParseError("row length differs from the first row", number);
  }
  if (rows.empty()) throw ParseError("matrix has no rows");
  const std::size_t cols = rows.front().size();
  return BitMatrix(std::move(rows), cols);
}

BitMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

}  // namespace cssaut
