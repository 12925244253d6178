#include "cssaut/gf2poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

#include "cssaut/errors.hpp"

namespace cssaut {

Gf2Poly Gf2Poly::from_word(std::uint64_t bits) {
  Gf2Poly p;
  p.words_.push_back(bits);
  p.trim();
  return p;
}

Gf2Poly Gf2Poly::monomial(std::size_t degree) {
  Gf2Poly p;
  p.set_coeff(degree, true);
  return p;
}

Gf2Poly Gf2Poly::x_pow_minus_one(std::size_t n) {
  Gf2Poly p = monomial(n);
  p += one();
  return p;
}

Gf2Poly Gf2Poly::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (s.empty()) throw ParseError("empty polynomial");
  Gf2Poly p;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto end = std::min(s.find('+', pos), s.size());
    const std::string term = s.substr(pos, end - pos);
    if (term == "0") {
      // contributes nothing
    } else if (term == "1") {
      p += one();
    } else if (term == "x") {
      p += monomial(1);
    } else if (term.size() > 2 && term.compare(0, 2, "x^") == 0) {
      std::size_t e = 0;
      const auto* first = term.data() + 2;
      const auto* last = term.data() + term.size();
      const auto [ptr, ec] = std::from_chars(first, last, e);
      if (ec != std::errc{} || ptr != last || e > 4096) {
        throw ParseError("bad polynomial term '" + term + "'");
      }
      p += monomial(e);
    } else {
      throw ParseError("bad polynomial term '" + term + "'");
    }
    if (end == s.size()) break;
    pos = end + 1;
  }
  return p;
}

int Gf2Poly::degree() const noexcept {
  if (words_.empty()) return -1;
  return static_cast<int>(words_.size() * 64 - 1 -
                          static_cast<std::size_t>(std::countl_zero(words_.back())));
}

bool Gf2Poly::coeff(std::size_t i) const noexcept {
  const auto w = i >> 6;
  return w < words_.size() && ((words_[w] >> (i & 63)) & 1U);
}

void Gf2Poly::set_coeff(std::size_t i, bool value) {
  const auto w = i >> 6;
  if (w >= words_.size()) {
    if (!value) return;
    words_.resize(w + 1, 0);
  }
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[w] |= mask;
  } else {
    words_[w] &= ~mask;
  }
  trim();
}

std::size_t Gf2Poly::weight() const noexcept {
  std::size_t w = 0;
  for (auto x : words_) w += static_cast<std::size_t>(std::popcount(x));
  return w;
}

void Gf2Poly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Gf2Poly& Gf2Poly::operator+=(const Gf2Poly& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  trim();
  return *this;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.words_.assign(a.words_.size() + b.words_.size(), 0);
  for (int i = 0; i <= a.degree(); ++i) {
    if (!a.coeff(static_cast<std::size_t>(i))) continue;
    const std::size_t shift = static_cast<std::size_t>(i);
    const std::size_t ws = shift >> 6;
    const unsigned bs = shift & 63;
    for (std::size_t j = 0; j < b.words_.size(); ++j) {
      out.words_[j + ws] ^= b.words_[j] << bs;
      if (bs != 0 && j + ws + 1 < out.words_.size()) {
        out.words_[j + ws + 1] ^= b.words_[j] >> (64 - bs);
      }
    }
  }
  out.trim();
  return out;
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(const Gf2Poly& divisor) const {
  if (divisor.is_zero()) throw InvalidArgument("polynomial division by zero");
  Gf2Poly rem = *this;
  Gf2Poly quot;
  const int dd = divisor.degree();
  for (int d = rem.degree(); d >= dd; d = rem.degree()) {
    const auto shift = static_cast<std::size_t>(d - dd);
    quot.set_coeff(shift, true);
    rem += divisor * monomial(shift);
  }
  return {quot, rem};
}

Gf2Poly Gf2Poly::derivative() const {
  Gf2Poly out;
  for (int i = 1; i <= degree(); i += 2) {
    if (coeff(static_cast<std::size_t>(i))) out.set_coeff(static_cast<std::size_t>(i - 1), true);
  }
  return out;
}

Gf2Poly Gf2Poly::reciprocal() const {
  Gf2Poly out;
  const int d = degree();
  for (int i = 0; i <= d; ++i) {
    if (coeff(static_cast<std::size_t>(i))) out.set_coeff(static_cast<std::size_t>(d - i), true);
  }
  return out;
}

Gf2Poly Gf2Poly::substitute_power(std::size_t e) const {
  Gf2Poly out;
  for (int i = 0; i <= degree(); ++i) {
    if (coeff(static_cast<std::size_t>(i))) out.set_coeff(static_cast<std::size_t>(i) * e, true);
  }
  return out;
}

BitVector Gf2Poly::to_bits(std::size_t n) const {
  if (degree() >= static_cast<int>(n)) throw DimensionError("polynomial does not fit");
  BitVector v(n);
  for (int i = 0; i <= degree(); ++i) {
    if (coeff(static_cast<std::size_t>(i))) v.set(static_cast<std::size_t>(i));
  }
  return v;
}

std::string Gf2Poly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (!coeff(static_cast<std::size_t>(i))) continue;
    if (!s.empty()) s += '+';
    if (i == 0) {
      s += '1';
    } else if (i == 1) {
      s += 'x';
    } else {
      s += "x^" + std::to_string(i);
    }
  }
  return s;
}

std::strong_ordering operator<=>(const Gf2Poly& a, const Gf2Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Gf2Poly mul_mod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& modulus) {
  return (a * b) % modulus;
}

Gf2Poly pow_two_power_mod(const Gf2Poly& base, std::size_t e, const Gf2Poly& modulus) {
  Gf2Poly r = base % modulus;
  for (std::size_t i = 0; i < e; ++i) r = mul_mod(r, r, modulus);
  return r;
}

namespace {

// Coefficient-wise square root of a polynomial with zero derivative.
Gf2Poly square_root(const Gf2Poly& f) {
  Gf2Poly out;
  for (int i = 0; i <= f.degree(); i += 2) {
    if (f.coeff(static_cast<std::size_t>(i))) out.set_coeff(static_cast<std::size_t>(i / 2), true);
  }
  return out;
}

// Berlekamp: the fixed space of Frobenius in GF(2)[x]/(f) has one dimension
// per irreducible factor, and gcds with its basis vectors separate them.
std::vector<Gf2Poly> berlekamp_split(const Gf2Poly& f) {
  const auto n = static_cast<std::size_t>(f.degree());
  if (n <= 1) return {f};
  std::vector<BitVector> rows;
  Gf2Poly xi = Gf2Poly::one();
  const Gf2Poly x2 = Gf2Poly::monomial(2) % f;
  for (std::size_t i = 0; i < n; ++i) {
    BitVector r = xi.to_bits(n);
    r.flip(i);
    rows.push_back(std::move(r));
    xi = mul_mod(xi, x2, f);
  }
  const BitMatrix kernel = kernel_basis(BitMatrix(std::move(rows), n).transpose());
  std::vector<Gf2Poly> parts{f};
  if (kernel.rows() == 1) return parts;
  for (const auto& kv : kernel.row_vectors()) {
    Gf2Poly v;
    for (std::size_t i = 0; i < n; ++i) {
      if (kv.get(i)) v.set_coeff(i, true);
    }
    if (v.degree() <= 0) continue;
    std::vector<Gf2Poly> next;
    for (const auto& g : parts) {
      const Gf2Poly d = gcd(g, v % g);
      if (d.degree() > 0 && d.degree() < g.degree()) {
        next.push_back(d);
        next.push_back(g / d);
      } else {
        next.push_back(g);
      }
    }
    parts = std::move(next);
    if (parts.size() == kernel.rows()) break;
  }
  return parts;
}

void factor_into(const Gf2Poly& f, int multiplicity, std::vector<std::pair<Gf2Poly, int>>& out) {
  if (f.degree() <= 0) return;
  const Gf2Poly df = f.derivative();
  if (df.is_zero()) {
    factor_into(square_root(f), multiplicity * 2, out);
    return;
  }
  // Yun-style squarefree decomposition; the leftover c is a perfect square.
  Gf2Poly c = gcd(f, df);
  Gf2Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    const Gf2Poly y = gcd(w, c);
    const Gf2Poly z = w / y;
    for (auto& p : berlekamp_split(z)) {
      if (p.degree() > 0) out.emplace_back(std::move(p), i * multiplicity);
    }
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) factor_into(square_root(c), multiplicity * 2, out);
}

}  // namespace

std::vector<std::pair<Gf2Poly, int>> factor(const Gf2Poly& f) {
  if (f.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  std::vector<std::pair<Gf2Poly, int>> raw;
  factor_into(f, 1, raw);
  std::sort(raw.begin(), raw.end());
  // Merge equal factors reached along different branches.
  std::vector<std::pair<Gf2Poly, int>> out;
  for (auto& [p, m] : raw) {
    if (!out.empty() && out.back().first == p) {
      out.back().second += m;
    } else {
      out.emplace_back(p, m);
    }
  }
  return out;
}

std::vector<Gf2Poly> factor_cyclic(std::size_t n) {
  if (n < 1 || n % 2 == 0) throw InvalidArgument("factor_cyclic needs odd n >= 1");
  std::vector<Gf2Poly> out;
  for (auto& [p, m] : factor(Gf2Poly::x_pow_minus_one(n))) {
    if (m != 1) throw InvalidArgument("x^n-1 is not squarefree");
    out.push_back(p);
  }
  return out;
}

Gf2Poly char_poly(const BitMatrix& m) {
  if (!m.is_square()) throw DimensionError("char_poly of a non-square matrix");
  const std::size_t d = m.rows();
  // Decompose V into cyclic pieces of successive quotients; the characteristic
  // polynomial is the product of the local minimal polynomials.
  EchelonBasis done(d);
  Gf2Poly result = Gf2Poly::one();
  for (std::size_t seed = 0; seed < d && done.dimension() < d; ++seed) {
    const BitVector e = BitVector::unit(d, seed);
    if (done.contains(e)) continue;
    // Local echelon rows with the combination of Krylov vectors they represent.
    std::vector<BitVector> local;
    std::vector<BitVector> combo;
    std::vector<std::size_t> pivots;
    std::vector<BitVector> krylov;
    BitVector v = e;
    for (std::size_t step = 0; step <= d; ++step) {
      BitVector r = done.reduce(v);
      BitVector c = BitVector::unit(d + 1, step);
      for (std::size_t j = 0; j < local.size(); ++j) {
        if (r.get(pivots[j])) {
          r ^= local[j];
          c ^= combo[j];
        }
      }
      const auto p = r.first_set();
      if (!p) {
        // c encodes the relation sum c_i A^i v = 0 modulo the finished part.
        Gf2Poly rel;
        for (std::size_t i = 0; i <= step; ++i) {
          if (c.get(i)) rel.set_coeff(i, true);
        }
        result = result * rel;
        break;
      }
      local.push_back(r);
      combo.push_back(c);
      pivots.push_back(*p);
      krylov.push_back(v);
      v = m.apply(v);
    }
    for (const auto& k : krylov) done.insert(k);
  }
  return result;
}

BitMatrix evaluate(const Gf2Poly& p, const BitMatrix& m) {
  if (!m.is_square()) throw DimensionError("evaluate on a non-square matrix");
  BitMatrix acc(m.rows(), m.cols());
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m;
    if (p.coeff(static_cast<std::size_t>(i))) acc = acc + BitMatrix::identity(m.rows());
  }
  return acc;
}

}  // namespace cssaut
