#pragma once

// Polynomials over GF(2), coefficient of X^i stored at bit i.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cssaut/gf2.hpp"

namespace cssaut {

class Gf2Poly {
 public:
  Gf2Poly() = default;
  /// Polynomial whose coefficient bits are the bits of `bits`.
  static Gf2Poly from_word(std::uint64_t bits);
  static Gf2Poly monomial(std::size_t degree);
  static Gf2Poly one() { return from_word(1); }
  /// X^n - 1 (= X^n + 1 over GF(2)).
  static Gf2Poly x_pow_minus_one(std::size_t n);
  /// Accepts forms like "x^5+x^2+1", "X^10 + X + 1", "1", "0".
  static Gf2Poly parse(std::string_view text);

  /// -1 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return words_.empty(); }
  bool is_one() const noexcept { return words_.size() == 1 && words_[0] == 1; }
  bool coeff(std::size_t i) const noexcept;
  void set_coeff(std::size_t i, bool value);
  std::size_t weight() const noexcept;
  /// Low 64 coefficients packed into a word.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  Gf2Poly& operator+=(const Gf2Poly& other);
  friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) { return a += b; }
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);
  /// Quotient and remainder; throws InvalidArgument on division by zero.
  std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& divisor) const;
  Gf2Poly operator%(const Gf2Poly& m) const { return divmod(m).second; }
  Gf2Poly operator/(const Gf2Poly& m) const { return divmod(m).first; }
  bool divides(const Gf2Poly& other) const { return (other % *this).is_zero(); }

  Gf2Poly derivative() const;
  /// X^deg f(1/X).
  Gf2Poly reciprocal() const;
  /// f(X^e).
  Gf2Poly substitute_power(std::size_t e) const;

  /// Coefficient vector of length n (degree must be < n).
  BitVector to_bits(std::size_t n) const;
  /// Highest degree first, e.g. "x^5+x^2+1".
  std::string to_string() const;

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;
  /// Orders by degree, then by coefficients from the top.
  friend std::strong_ordering operator<=>(const Gf2Poly& a, const Gf2Poly& b);

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

Gf2Poly gcd(Gf2Poly a, Gf2Poly b);
/// base^(2^e) mod modulus.
Gf2Poly pow_two_power_mod(const Gf2Poly& base, std::size_t e, const Gf2Poly& modulus);
Gf2Poly mul_mod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& modulus);

/// Distinct monic irreducible factors of a nonzero polynomial with their
/// multiplicities, sorted by (degree, coefficients).
std::vector<std::pair<Gf2Poly, int>> factor(const Gf2Poly& f);

/// Irreducible factors of X^n - 1 for odd n, sorted.
std::vector<Gf2Poly> factor_cyclic(std::size_t n);

/// Characteristic polynomial det(X I + M) of a square matrix.
Gf2Poly char_poly(const BitMatrix& m);

/// p(M) for a square matrix M.
BitMatrix evaluate(const Gf2Poly& p, const BitMatrix& m);

}  // namespace cssaut
