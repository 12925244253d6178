#include "cssaut/codes.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "cssaut/errors.hpp"

namespace cssaut {

namespace {

void check_enumerable(std::size_t dim) {
  if (dim > kMaxEnumerationDim) {
    throw CapacityError("enumeration of 2^" + std::to_string(dim) + " codewords exceeds the limit 2^" +
                        std::to_string(kMaxEnumerationDim));
  }
}

// Gray-code walk over all combinations of the rows, packed in one word.
// f(word, combination_gray_code) is called for every combination including 0.
template <typename F>
void gray_walk_packed(const std::vector<std::uint64_t>& rows, F&& f) {
  std::uint64_t word = 0;
  f(word, std::uint64_t{0});
  const std::uint64_t total = std::uint64_t{1} << rows.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    word ^= rows[bit];
    f(word, i ^ (i >> 1));
  }
}

template <typename F>
void gray_walk(const BitMatrix& basis, F&& f) {
  BitVector word(basis.cols());
  f(word, std::uint64_t{0});
  const std::uint64_t total = std::uint64_t{1} << basis.rows();
  for (std::uint64_t i = 1; i < total; ++i) {
    word ^= basis.row(static_cast<std::size_t>(std::countr_zero(i)));
    f(word, i ^ (i >> 1));
  }
}

std::vector<std::uint64_t> packed_rows(const BitMatrix& m) {
  std::vector<std::uint64_t> out;
  out.reserve(m.rows());
  for (const auto& r : m.row_vectors()) out.push_back(r.low_word());
  return out;
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

LinearCode::LinearCode(BitMatrix generator) : n_(generator.cols()), generator_(std::move(generator)) {
  auto red = rref(generator_);
  if (red.rank != generator_.rows()) {
    throw InvalidArgument("generator rows are linearly dependent (rank " + std::to_string(red.rank) +
                          " < " + std::to_string(generator_.rows()) + ")");
  }
  echelon_ = std::move(red.reduced);
  pivots_ = std::move(red.pivots);
}

LinearCode LinearCode::from_span(const BitMatrix& rows) { return LinearCode(row_space_basis(rows)); }

LinearCode LinearCode::zero(std::size_t n) { return LinearCode(BitMatrix(0, n)); }

LinearCode LinearCode::full(std::size_t n) { return LinearCode(BitMatrix::identity(n)); }

bool LinearCode::contains(const BitVector& v) const {
  if (v.size() != n_) throw DimensionError("vector length does not match code length");
  BitVector r = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (r.get(pivots_[i])) r ^= echelon_.row(i);
  }
  return r.is_zero();
}

bool LinearCode::is_subcode_of(const LinearCode& other) const {
  if (n_ != other.n_) return false;
  return std::all_of(echelon_.row_vectors().begin(), echelon_.row_vectors().end(),
                     [&](const BitVector& r) { return other.contains(r); });
}

LinearCode dual(const LinearCode& c) { return LinearCode(kernel_basis(c.generator())); }

void for_each_codeword(const BitMatrix& basis, const std::function<void(const BitVector&)>& f) {
  check_enumerable(basis.rows());
  gray_walk(basis, [&](const BitVector& w, std::uint64_t) { f(w); });
}

std::vector<std::uint64_t> weight_distribution(const LinearCode& c) {
  check_enumerable(c.k());
  std::vector<std::uint64_t> dist(c.n() + 1, 0);
  if (c.n() <= 64) {
    gray_walk_packed(packed_rows(c.generator()),
                     [&](std::uint64_t w, std::uint64_t) { ++dist[static_cast<std::size_t>(std::popcount(w))]; });
  } else {
    gray_walk(c.generator(), [&](const BitVector& w, std::uint64_t) { ++dist[w.weight()]; });
  }
  return dist;
}

std::vector<BigInt> macwilliams_transform(const std::vector<std::uint64_t>& distribution, std::size_t k) {
  const std::size_t n = distribution.size() - 1;
  std::vector<BigInt> out(n + 1, 0);
  for (std::size_t j = 0; j <= n; ++j) {
    BigInt sum = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (distribution[i] == 0) continue;
      // Krawtchouk polynomial K_j(i).
      BigInt kr = 0;
      for (std::size_t s = 0; s <= j; ++s) {
        BigInt term = binomial(i, s) * binomial(n - i, j - s);
        if (s % 2) {
          kr -= term;
        } else {
          kr += term;
        }
      }
      sum += kr * distribution[i];
    }
    out[j] = sum >> k;
  }
  return out;
}

std::size_t minimum_distance(const LinearCode& c) {
  if (c.k() == 0) throw InvalidArgument("minimum distance of the zero code is undefined");
  const std::size_t dual_dim = c.n() - c.k();
  check_enumerable(std::min(c.k(), dual_dim));
  if (c.k() <= dual_dim) {
    const auto dist = weight_distribution(c);
    for (std::size_t w = 1; w < dist.size(); ++w) {
      if (dist[w]) return w;
    }
  } else {
    const auto dist = macwilliams_transform(weight_distribution(dual(c)), dual_dim);
    for (std::size_t w = 1; w < dist.size(); ++w) {
      if (dist[w] != 0) return w;
    }
  }
  throw InvalidArgument("code has no nonzero codeword");
}

CodeClass classify(const LinearCode& c) {
  CodeClass out;
  const auto& g = c.generator();
  bool pairwise_even = true;
  bool rows_div4 = true;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (g.row(i).weight() % 4 != 0) rows_div4 = false;
    for (std::size_t j = 0; j <= i; ++j) {
      if (g.row(i).overlap(g.row(j)) % 2 != 0) pairwise_even = false;
    }
  }
  out.self_orthogonal = pairwise_even;
  // wt(a+b) = wt(a) + wt(b) - 2|a & b|, so doubly even rows with even
  // pairwise intersections give a doubly even code.
  out.doubly_even = pairwise_even && rows_div4;
  out.contains_all_one = c.n() > 0 && c.contains(BitVector::ones(c.n()));
  return out;
}

// ---------------------------------------------------------------------------

BitMatrix hamming_parity_check(std::size_t m) {
  if (m < 2 || m > 16) throw InvalidArgument("hamming family needs 2 <= m <= 16");
  const std::size_t n = (std::size_t{1} << m) - 1;
  std::vector<BitVector> rows(m, BitVector(n));
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if ((j >> i) & 1U) rows[i].set(j - 1);
    }
  }
  return BitMatrix(std::move(rows), n);
}

LinearCode hamming(std::size_t m) { return LinearCode(kernel_basis(hamming_parity_check(m))); }

LinearCode simplex(std::size_t m) { return LinearCode(hamming_parity_check(m)); }

LinearCode repetition(std::size_t n) {
  if (n == 0) throw InvalidArgument("repetition code needs n >= 1");
  return LinearCode(BitMatrix({BitVector::ones(n)}, n));
}

std::vector<std::vector<std::size_t>> rm_monomials(std::size_t r, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t deg = 0; deg <= r; ++deg) {
    // Lexicographic enumeration of deg-subsets of {0..m-1}.
    std::vector<std::size_t> s(deg);
    for (std::size_t i = 0; i < deg; ++i) s[i] = i;
    for (;;) {
      out.push_back(s);
      std::size_t i = deg;
      while (i > 0 && s[i - 1] == m - deg + i - 1) --i;
      if (i == 0) break;
      ++s[i - 1];
      for (std::size_t j = i; j < deg; ++j) s[j] = s[j - 1] + 1;
    }
  }
  return out;
}

BitVector rm_monomial_word(const std::vector<std::size_t>& monomial, std::size_t m) {
  const std::size_t n = std::size_t{1} << m;
  std::size_t mask = 0;
  for (auto v : monomial) mask |= std::size_t{1} << v;
  BitVector w(n);
  for (std::size_t x = 0; x < n; ++x) {
    if ((x & mask) == mask) w.set(x);
  }
  return w;
}

LinearCode reed_muller(std::size_t r, std::size_t m) {
  if (m < 1 || m > 12 || r > m) throw InvalidArgument("reed_muller needs 0 <= r <= m <= 12");
  std::vector<BitVector> rows;
  for (const auto& mono : rm_monomials(r, m)) rows.push_back(rm_monomial_word(mono, m));
  return LinearCode(BitMatrix(std::move(rows), std::size_t{1} << m));
}

std::vector<Permutation> affine_generators(std::size_t m) {
  if (m < 1 || m > 16) throw InvalidArgument("affine_generators needs 1 <= m <= 16");
  const std::size_t n = std::size_t{1} << m;
  std::vector<Permutation> gens;
  std::vector<std::uint32_t> t(n);
  for (std::size_t x = 0; x < n; ++x) t[x] = static_cast<std::uint32_t>(x ^ 1U);
  gens.emplace_back(std::move(t));
  if (m >= 2) {
    std::vector<std::uint32_t> tv(n);
    std::vector<std::uint32_t> cyc(n);
    for (std::size_t x = 0; x < n; ++x) {
      tv[x] = static_cast<std::uint32_t>(x ^ ((x >> 1) & 1U));
      cyc[x] = static_cast<std::uint32_t>(((x << 1) | (x >> (m - 1))) & (n - 1));
    }
    gens.emplace_back(std::move(tv));
    gens.emplace_back(std::move(cyc));
  }
  return gens;
}

void CyclicCodeSpec::validate() const {
  if (n < 1 || n % 2 == 0) throw InvalidArgument("cyclic codes need odd length");
  if (g.is_zero() || !g.divides(Gf2Poly::x_pow_minus_one(n))) {
    throw InvalidArgument("generator polynomial " + g.to_string() + " does not divide x^" +
                          std::to_string(n) + "-1");
  }
}

Gf2Poly CyclicCodeSpec::check_polynomial() const {
  validate();
  return Gf2Poly::x_pow_minus_one(n) / g;
}

CyclicCodeSpec CyclicCodeSpec::dual() const { return {n, check_polynomial().reciprocal()}; }

LinearCode cyclic(const CyclicCodeSpec& spec) {
  spec.validate();
  const std::size_t k = spec.dimension();
  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < k; ++i) rows.push_back((spec.g * Gf2Poly::monomial(i)).to_bits(spec.n));
  return LinearCode(BitMatrix(std::move(rows), spec.n));
}

CyclicCodeSpec bch_31_21_spec() {
  const Gf2Poly m1 = Gf2Poly::parse("x^5+x^2+1");
  const auto factors = factor_cyclic(31);
  if (std::find(factors.begin(), factors.end(), m1) == factors.end()) {
    throw std::logic_error("x^5+x^2+1 is not a factor of x^31-1");
  }
  // m_3 is the minimal polynomial of alpha^3, i.e. the factor f with m_1 | f(x^3).
  for (const auto& f : factors) {
    if (f.degree() == 5 && m1.divides(f.substitute_power(3))) return {31, m1 * f};
  }
  throw std::logic_error("minimal polynomial of alpha^3 not found");
}

LinearCode bch_31_21() { return cyclic(bch_31_21_spec()); }

LinearCode bch_dual_31_10() { return cyclic(bch_31_21_spec().dual()); }

LinearCode code_22_7() {
  return LinearCode(BitMatrix::from_strings({
      "1000100001100010101010",
      "0100100001101001010111",
      "0010100001010011011000",
      "0001000100100001101011",
      "0000010101011111100010",
      "0000001100100110101100",
      "0000000011111111111111",
  }));
}

// ---------------------------------------------------------------------------

namespace {

CssCode assemble(const LinearCode& c1, const LinearCode& c2, BitMatrix logical, BitMatrix inner) {
  CssCode css;
  css.c1 = c1;
  css.c2 = c2;
  css.logical_basis = std::move(logical);
  css.inner_basis = std::move(inner);
  css.solver = std::make_shared<const BasisSolver>(css.logical_basis.stack(css.inner_basis));
  if (css.solver->size() != c1.k()) throw std::logic_error("stacked basis does not span the outer code");
  return css;
}

}  // namespace

CssCode css_from_pair(const LinearCode& c1, const LinearCode& c2) {
  if (c1.n() != c2.n()) throw DimensionError("CSS pair has codes of different length");
  if (!c2.is_subcode_of(c1)) throw InvalidArgument("inner code is not contained in the outer code");
  const BitMatrix inner = row_space_basis(c2.generator());
  EchelonBasis inner_span(c1.n());
  for (const auto& r : inner.row_vectors()) inner_span.insert(r);
  // Reduce c1's echelon rows modulo c2: the survivors vanish on c2's pivots
  // and their echelon form is a canonical complement.
  std::vector<BitVector> residues;
  for (const auto& r : c1.echelon().row_vectors()) residues.push_back(inner_span.reduce(r));
  const BitMatrix logical =
      c1.n() == 0 ? BitMatrix(0, 0) : row_space_basis(BitMatrix(std::move(residues), c1.n()));
  return assemble(c1, c2, logical, inner);
}

CssCode with_logical_basis(const CssCode& css, const BitMatrix& logical) {
  if (logical.rows() != css.k() || logical.cols() != css.n()) {
    throw DimensionError("logical basis has the wrong shape");
  }
  for (const auto& r : logical.row_vectors()) {
    if (!css.c1.contains(r)) throw InvalidArgument("logical representative outside the outer code");
  }
  if (rank(logical.stack(css.inner_basis)) != css.c1.k()) {
    throw InvalidArgument("logical representatives are dependent modulo the inner code");
  }
  return assemble(css.c1, css.c2, logical, css.inner_basis);
}

CssParameters css_parameters(const CssCode& css) {
  CssParameters p{css.n(), css.k(), 0};
  if (css.k() == 0) return p;
  check_enumerable(css.c1.k());
  const BitMatrix basis = css.logical_basis.stack(css.inner_basis);
  const std::uint64_t logical_mask = (std::uint64_t{1} << css.k()) - 1;
  std::size_t best = css.n() + 1;
  if (css.n() <= 64) {
    gray_walk_packed(packed_rows(basis), [&](std::uint64_t w, std::uint64_t combo) {
      if (combo & logical_mask) best = std::min(best, static_cast<std::size_t>(std::popcount(w)));
    });
  } else {
    gray_walk(basis, [&](const BitVector& w, std::uint64_t combo) {
      if (combo & logical_mask) best = std::min(best, w.weight());
    });
  }
  p.d = best;
  return p;
}

CosetState coset_state(const CssCode& css, const BitVector& beta) {
  if (beta.size() != css.k()) throw DimensionError("label length does not match k");
  if (css.k() == 0) return {beta, BitVector(css.n())};
  return {beta, css.logical_basis.left_apply(beta)};
}

BitVector coset_label(const CssCode& css, const BitVector& v) {
  const auto coords = css.coordinates(v);
  if (!coords) throw InvalidArgument("vector is not in the outer code");
  return coords->slice(0, css.k());
}

// ---------------------------------------------------------------------------

LinearCode parse_code(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<BitVector> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    if (!header) {
      std::istringstream hs(line);
      long long n = -1;
      long long k = -1;
      std::string extra;
      if (!(hs >> n >> k) || (hs >> extra) || n < 1 || k < 0 || k > n) {
        throw ParseError("expected header 'n k' with 0 <= k <= n", line_no);
      }
      header = {static_cast<std::size_t>(n), static_cast<std::size_t>(k)};
      continue;
    }
    if (line.empty() && rows.size() == header->second) continue;
    if (rows.size() == header->second) throw ParseError("more rows than k", line_no);
    if (line.size() != header->first) {
      throw ParseError("row has " + std::to_string(line.size()) + " symbols, expected " +
                           std::to_string(header->first),
                       line_no);
    }
    try {
      rows.push_back(BitVector::from_string(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!header) throw ParseError("missing header");
  if (rows.size() != header->second) {
    throw ParseError("expected " + std::to_string(header->second) + " rows, found " +
                     std::to_string(rows.size()));
  }
  try {
    return LinearCode(BitMatrix(std::move(rows), header->first));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_code(const LinearCode& c) {
  std::string s = std::to_string(c.n()) + " " + std::to_string(c.k()) + "\n";
  for (const auto& r : c.generator().row_vectors()) s += r.to_string() + "\n";
  return s;
}

LinearCode read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open code file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_code(buf.str());
}

}  // namespace cssaut
