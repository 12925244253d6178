#include "cssaut/stabilizer.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cssaut/automorphism.hpp"
#include "cssaut/codes.hpp"
#include "cssaut/errors.hpp"
#include "cssaut/gf2poly.hpp"

namespace cssaut {

Gf4Vector::Gf4Vector(BitVector x, BitVector z) : x_(std::move(x)), z_(std::move(z)) {
  if (x_.size() != z_.size()) throw DimensionError("x and z parts differ in length");
}

Gf4Vector Gf4Vector::parse(std::string_view text) {
  Gf4Vector v(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '0': break;
      case '1': v.x_.set(i); break;
      case 'w': v.z_.set(i); break;
      case 'W':
        v.x_.set(i);
        v.z_.set(i);
        break;
      default: throw ParseError(std::string("unexpected symbol '") + text[i] + "', expected one of 0 1 w W");
    }
  }
  return v;
}

std::size_t Gf4Vector::weight() const {
  BitVector support = x_;
  for (std::size_t i = 0; i < size(); ++i) {
    if (z_.get(i)) support.set(i);
  }
  return support.weight();
}

Gf4Vector Gf4Vector::from_binary(const BitVector& bits) {
  if (bits.size() % 2 != 0) throw DimensionError("binary image must have even length");
  const std::size_t n = bits.size() / 2;
  return Gf4Vector(bits.slice(0, n), bits.slice(n, n));
}

Gf4Vector& Gf4Vector::operator^=(const Gf4Vector& o) {
  x_ ^= o.x_;
  z_ ^= o.z_;
  return *this;
}

std::string Gf4Vector::to_string() const {
  static constexpr char kSymbols[] = {'0', '1', 'w', 'W'};
  std::string out(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) out[i] = kSymbols[symbol(i)];
  return out;
}

bool symplectic_inner(const Gf4Vector& u, const Gf4Vector& v) {
  if (u.size() != v.size()) throw DimensionError("symplectic product of vectors with different lengths");
  return u.x().dot(v.z()) != u.z().dot(v.x());
}

Gf4Vector apply_perm(const Gf4Vector& v, const Permutation& p) {
  return Gf4Vector(apply_perm(v.x(), p), apply_perm(v.z(), p));
}

namespace {

std::string pair_name(const char* a, std::size_t i, const char* b, std::size_t j) {
  return std::string(a) + "[" + std::to_string(i) + "]/" + b + "[" + std::to_string(j) + "]";
}

}  // namespace

StabilizerCode load_stabilizer(const std::vector<Gf4Vector>& stabilizers, const std::vector<Gf4Vector>& logical_x,
                               const std::vector<Gf4Vector>& logical_z) {
  StabilizerCode s;
  s.k = logical_x.size();
  if (logical_z.size() != s.k) throw InvalidArgument("logical X and Z sections differ in size");
  const auto* first = !stabilizers.empty() ? &stabilizers.front() : !logical_x.empty() ? &logical_x.front() : nullptr;
  if (!first) throw InvalidArgument("stabilizer code has no rows");
  s.n = first->size();
  if (stabilizers.size() + s.k != s.n) {
    throw InvalidArgument("expected n - k = " + std::to_string(s.n - std::min(s.n, s.k)) + " stabilizer rows, found " +
                          std::to_string(stabilizers.size()));
  }
  for (const auto* group : {&stabilizers, &logical_x, &logical_z}) {
    for (const auto& v : *group) {
      if (v.size() != s.n) throw DimensionError("rows have different lengths");
    }
  }
  s.stabilizers = stabilizers;
  s.logical_x = logical_x;
  s.logical_z = logical_z;

  std::vector<std::string> problems;
  auto expect = [&](const Gf4Vector& u, const Gf4Vector& v, bool want, std::string name) {
    if (symplectic_inner(u, v) != want) {
      problems.push_back(name + (want ? " should anticommute" : " should commute"));
    }
  };
  for (std::size_t i = 0; i < stabilizers.size(); ++i) {
    for (std::size_t j = i + 1; j < stabilizers.size(); ++j) {
      expect(stabilizers[i], stabilizers[j], false, pair_name("S", i, "S", j));
    }
    for (std::size_t j = 0; j < s.k; ++j) {
      expect(stabilizers[i], logical_x[j], false, pair_name("S", i, "X", j));
      expect(stabilizers[i], logical_z[j], false, pair_name("S", i, "Z", j));
    }
  }
  for (std::size_t i = 0; i < s.k; ++i) {
    for (std::size_t j = 0; j < s.k; ++j) {
      expect(logical_x[i], logical_z[j], i == j, pair_name("X", i, "Z", j));
      if (j > i) {
        expect(logical_x[i], logical_x[j], false, pair_name("X", i, "X", j));
        expect(logical_z[i], logical_z[j], false, pair_name("Z", i, "Z", j));
      }
    }
  }
  std::vector<BitVector> all;
  for (const auto* group : {&stabilizers, &logical_x, &logical_z}) {
    for (const auto& v : *group) all.push_back(v.binary());
  }
  if (rank(BitMatrix(all, 2 * s.n)) != all.size()) problems.push_back("rows are linearly dependent");
  if (!problems.empty()) {
    std::string msg = "invalid stabilizer code:";
    for (const auto& p : problems) msg += " " + p + ";";
    msg.pop_back();
    throw InvalidArgument(msg);
  }
  return s;
}

StabilizerCode parse_stabilizer(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<Gf4Vector>> sections(1);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    line.erase(std::remove(line.begin(), line.end(), ' '), line.end());
    if (line.empty() || line[0] == '#') continue;
    if (line == "---") {
      if (sections.size() == 3) throw ParseError("more than three sections", line_no);
      sections.emplace_back();
      continue;
    }
    try {
      sections.back().push_back(Gf4Vector::parse(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (sections.size() != 3) throw ParseError("expected three sections separated by '---'");
  std::size_t n = 0;
  for (const auto& sec : sections) {
    for (const auto& v : sec) {
      if (n == 0) n = v.size();
      if (v.size() != n) throw ParseError("rows have different lengths");
    }
  }
  try {
    return load_stabilizer(sections[0], sections[1], sections[2]);
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_stabilizer(const StabilizerCode& s) {
  std::string out;
  for (const auto& v : s.stabilizers) out += v.to_string() + "\n";
  out += "---\n";
  for (const auto& v : s.logical_x) out += v.to_string() + "\n";
  out += "---\n";
  for (const auto& v : s.logical_z) out += v.to_string() + "\n";
  return out;
}

StabilizerCode read_stabilizer_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_stabilizer(buf.str());
}

BitMatrix stabilizer_matrix(const StabilizerCode& s) {
  std::vector<BitVector> rows;
  for (const auto& v : s.stabilizers) rows.push_back(v.binary());
  return BitMatrix(std::move(rows), 2 * s.n);
}

bool stab_is_automorphism(const StabilizerCode& s, const Permutation& p) {
  if (p.degree() != s.n) throw DimensionError("permutation degree does not match code length");
  EchelonBasis span(2 * s.n);
  for (const auto& v : s.stabilizers) span.insert(v.binary());
  return std::all_of(s.stabilizers.begin(), s.stabilizers.end(),
                     [&](const Gf4Vector& v) { return span.contains(apply_perm(v, p).binary()); });
}

PermGroup stab_aut_group(const StabilizerCode& s) {
  if (s.n > kMaxStabSearchDegree) {
    throw CapacityError("stabilizer automorphism search supports n <= " + std::to_string(kMaxStabSearchDegree));
  }
  detail::IncidenceStructure structure;
  structure.points = s.n;
  const auto basis = stabilizer_matrix(s);
  std::vector<std::vector<Gf4Vector>> by_weight(s.n + 1);
  if (basis.rows() > 0) {
    for_each_codeword(basis, [&](const BitVector& w) {
      auto v = Gf4Vector::from_binary(w);
      if (!v.is_zero()) by_weight[v.weight()].push_back(std::move(v));
    });
  }
  EchelonBasis span(2 * s.n);
  for (std::size_t w = 1; w <= s.n && span.dimension() < basis.rows(); ++w) {
    std::sort(by_weight[w].begin(), by_weight[w].end());
    for (const auto& v : by_weight[w]) {
      span.insert(v.binary());
      detail::IncidenceStructure::Block block;
      block.color = static_cast<std::uint32_t>(w);
      for (std::uint32_t x = 0; x < s.n; ++x) {
        if (const auto sym = v.symbol(x)) block.incidences.emplace_back(x, static_cast<std::uint8_t>(sym));
      }
      structure.blocks.push_back(std::move(block));
    }
  }
  return detail::search_automorphisms(
      structure, [&](const Permutation& p) { return stab_is_automorphism(s, p); }, default_node_budget());
}

PermGroup stab_brute_force_aut(const StabilizerCode& s) {
  if (s.n > 8) throw InvalidArgument("brute force automorphism search is limited to n <= 8");
  std::vector<std::uint32_t> images(s.n);
  std::iota(images.begin(), images.end(), 0U);
  std::vector<Permutation> members;
  do {
    Permutation p(images);
    if (stab_is_automorphism(s, p)) members.push_back(std::move(p));
  } while (std::next_permutation(images.begin(), images.end()));
  return group_from_elements(s.n, members);
}

BitMatrix stab_symplectic_rep(const StabilizerCode& s, const Permutation& p) {
  if (!stab_is_automorphism(s, p)) throw InvalidArgument("permutation is not an automorphism of the stabilizer");
  std::vector<BitVector> basis;
  for (const auto* group : {&s.logical_x, &s.logical_z, &s.stabilizers}) {
    for (const auto& v : *group) basis.push_back(v.binary());
  }
  const BasisSolver solver(BitMatrix(basis, 2 * s.n));
  std::vector<BitVector> rows;
  for (const auto* group : {&s.logical_x, &s.logical_z}) {
    for (const auto& v : *group) {
      const auto c = solver.coordinates(apply_perm(v, p).binary());
      if (!c) throw Error("permuted logical operator is outside the normalizer; the code data are inconsistent");
      rows.push_back(c->slice(0, 2 * s.k));
    }
  }
  return BitMatrix(std::move(rows), 2 * s.k);
}

BitMatrix symplectic_form(std::size_t k) {
  const auto id = BitMatrix::identity(k);
  const BitMatrix zero(k, k);
  return BitMatrix::from_blocks(zero, id, id, zero);
}

bool is_symplectic(const BitMatrix& m) {
  if (!m.is_square() || m.rows() % 2 != 0) return false;
  const auto j = symplectic_form(m.rows() / 2);
  return m * j * m.transpose() == j;
}

namespace {

std::uint32_t field_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned m) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1U) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1U << m)) a ^= modulus;
  }
  return r;
}

}  // namespace

std::vector<std::uint32_t> affine_labeling(const PermGroup& g) {
  const std::size_t n = g.degree();
  unsigned m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  if (n < 4 || (std::size_t{1} << m) != n || m > 5) return {};
  if (g.order() != n * (n - 1)) return {};
  // An element of order n-1 fixing point 0 plays multiplication by a primitive element.
  std::optional<Permutation> mult;
  for (const auto& e : g.elements()) {
    if (e[0] == 0 && e.order() == n - 1) {
      mult = e;
      break;
    }
  }
  if (!mult) return {};
  for (std::uint32_t modulus = (1U << m) + 1; modulus < (2U << m); modulus += 2) {
    const auto f = Gf2Poly::from_word(modulus);
    const auto parts = factor(f);
    if (parts.size() != 1 || parts.front().second != 1) continue;
    std::vector<std::uint32_t> labels(n, 0);
    std::vector<std::uint32_t> point_of(n, 0);
    std::uint32_t point = 1;
    std::uint32_t alpha_i = 1;
    bool primitive = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (i > 0 && alpha_i == 1) primitive = false;
      labels[point] = alpha_i;
      point = (*mult)[point];
      alpha_i = field_mul(alpha_i, 2, modulus, m);
    }
    if (!primitive) continue;
    for (std::uint32_t x = 0; x < n; ++x) point_of[labels[x]] = x;
    bool ok = true;
    for (std::uint32_t a = 1; a < n && ok; ++a) {
      for (std::uint32_t b = 0; b < n && ok; ++b) {
        std::vector<std::uint32_t> images(n);
        for (std::uint32_t x = 0; x < n; ++x) images[x] = point_of[field_mul(a, labels[x], modulus, m) ^ b];
        ok = g.contains(Permutation(images));
      }
    }
    if (ok) return labels;
  }
  return {};
}

}  // namespace cssaut
