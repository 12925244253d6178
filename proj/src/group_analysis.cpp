#include "cssaut/group_analysis.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_set>

#include "cssaut/automorphism.hpp"
#include "cssaut/errors.hpp"
#include "cssaut/gf2poly.hpp"

namespace cssaut {

BigInt sl_order(std::size_t n, std::uint64_t q) {
  if (n < 1) throw InvalidArgument("sl_order needs n >= 1");
  if (q < 2) throw InvalidArgument("q must be a prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint64_t rest = q;
  while (rest % p == 0) rest /= p;
  if (rest != 1) throw InvalidArgument("q must be a prime power");
  BigInt order = 1;
  BigInt qn = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= q;
  BigInt qi = 1;
  for (std::size_t i = 0; i < n; ++i) {
    order *= qn - qi;
    qi *= q;
  }
  return order / (q - 1);
}

// ---------------------------------------------------------------------------
// Algebra span.

bool AlgebraSpan::contains(const BitMatrix& a) const {
  EchelonBasis span(k * k);
  for (const auto& b : basis) span.insert(b.flatten());
  return span.contains(a.flatten());
}

AlgebraSpan algebra_span(const std::vector<BitMatrix>& generators) {
  if (generators.empty()) throw InvalidArgument("algebra span needs at least one generator");
  AlgebraSpan out;
  out.k = generators.front().rows();
  EchelonBasis span(out.k * out.k);
  std::vector<BitMatrix> queue;
  auto offer = [&](const BitMatrix& m) {
    if (span.insert(m.flatten())) {
      queue.push_back(m);
      out.basis.push_back(m);
    }
  };
  for (const auto& g : generators) offer(g);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const BitMatrix a = queue[head];
    for (const auto& g : generators) {
      offer(a * g);
      offer(g * a);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Invariant subspaces.

BitMatrix spin(const std::vector<BitMatrix>& generators, const BitVector& seed) {
  const std::size_t d = seed.size();
  EchelonBasis span(d);
  std::vector<BitVector> queue;
  if (span.insert(seed)) queue.push_back(seed);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : generators) {
      auto w = g.apply(queue[head]);
      if (span.insert(w)) queue.push_back(std::move(w));
    }
  }
  return row_space_basis(span.basis());
}

bool is_invariant(const std::vector<BitMatrix>& generators, const BitMatrix& subspace) {
  EchelonBasis span(subspace.cols());
  for (const auto& r : subspace.row_vectors()) span.insert(r);
  for (const auto& g : generators) {
    for (const auto& r : subspace.row_vectors()) {
      if (!span.contains(g.apply(r))) return false;
    }
  }
  return true;
}

std::vector<std::size_t> InvariantChain::block_dims() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < subspaces.size(); ++i) out.push_back(subspaces[i].rows() - subspaces[i - 1].rows());
  return out;
}

namespace {

// Annihilator: all x with <s, x> = 0 for every row s.
BitMatrix annihilator(const BitMatrix& s, std::size_t d) {
  if (s.rows() == 0) return BitMatrix::identity(d);
  return row_space_basis(kernel_basis(s));
}

BitMatrix subspace_sum(const BitMatrix& a, const BitMatrix& b) { return row_space_basis(a.stack(b)); }

BitMatrix subspace_meet(const BitMatrix& a, const BitMatrix& b, std::size_t d) {
  return annihilator(annihilator(a, d).stack(annihilator(b, d)), d);
}

bool subspace_contains(const BitMatrix& big, const BitMatrix& small) {
  EchelonBasis span(big.cols());
  for (const auto& r : big.row_vectors()) span.insert(r);
  return std::all_of(small.row_vectors().begin(), small.row_vectors().end(),
                     [&](const BitVector& r) { return span.contains(r); });
}

// Seeds: unit vectors, and kernels of f(e) for irreducible factors f of the
// characteristic polynomial of e, over generators, pairwise products and a
// few random words.
std::vector<BitMatrix> seed_spaces(const std::vector<BitMatrix>& gens, std::size_t d) {
  std::vector<BitMatrix> elements = gens;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < gens.size(); ++j) elements.push_back(gens[i] * gens[j]);
  }
  std::mt19937_64 rng(0xC0DE);
  for (int t = 0; t < 24 && !gens.empty(); ++t) {
    BitMatrix w = BitMatrix::identity(d);
    for (int l = 0; l < 8; ++l) w = w * gens[rng() % gens.size()];
    elements.push_back(std::move(w));
  }
  std::vector<BitMatrix> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(spin(gens, BitVector::unit(d, i)));
  std::unordered_set<BitMatrix, BitMatrixHash> done;
  for (const auto& e : elements) {
    if (!done.insert(e).second) continue;
    for (const auto& [f, mult] : factor(char_poly(e))) {
      const auto kernel = kernel_basis(evaluate(f, e));
      for (const auto& v : kernel.row_vectors()) out.push_back(spin(gens, v));
    }
  }
  return out;
}

}  // namespace

InvariantAnalysis analyze_invariants(const std::vector<BitMatrix>& generators, std::size_t dim) {
  InvariantAnalysis out;
  out.dim = dim;
  std::map<std::string, BitMatrix> found;
  auto offer = [&](const BitMatrix& s) {
    if (s.rows() == 0 || s.rows() == dim) return false;
    return found.emplace(s.to_string(), s).second;
  };
  for (const auto& s : seed_spaces(generators, dim)) offer(s);
  std::vector<BitMatrix> transposed;
  for (const auto& g : generators) transposed.push_back(g.transpose());
  for (const auto& s : seed_spaces(transposed, dim)) offer(annihilator(s, dim));
  // Close under sums and intersections.
  constexpr std::size_t kCap = 256;
  for (bool grew = true; grew && found.size() < kCap;) {
    grew = false;
    std::vector<BitMatrix> current;
    for (const auto& [key, s] : found) current.push_back(s);
    for (std::size_t i = 0; i < current.size() && found.size() < kCap; ++i) {
      for (std::size_t j = i + 1; j < current.size() && found.size() < kCap; ++j) {
        grew |= offer(subspace_sum(current[i], current[j]));
        grew |= offer(subspace_meet(current[i], current[j], dim));
      }
    }
  }
  for (const auto& [key, s] : found) out.found.push_back(s);
  std::stable_sort(out.found.begin(), out.found.end(),
                   [](const BitMatrix& a, const BitMatrix& b) { return a.rows() < b.rows(); });

  // Direct sum of minimal subspaces, greedily; then of any found subspaces.
  auto greedy = [&](const std::vector<BitMatrix>& pool) {
    std::vector<BitMatrix> parts;
    EchelonBasis total(dim);
    for (const auto& s : pool) {
      EchelonBasis trial = total;
      bool independent = true;
      for (const auto& r : s.row_vectors()) independent = independent && trial.insert(r);
      if (independent) {
        total = trial;
        parts.push_back(s);
      }
    }
    if (total.dimension() != dim) parts.clear();
    return parts;
  };
  std::vector<BitMatrix> minimal;
  for (const auto& s : out.found) {
    const bool has_smaller = std::any_of(out.found.begin(), out.found.end(), [&](const BitMatrix& t) {
      return t.rows() < s.rows() && subspace_contains(s, t);
    });
    if (!has_smaller) minimal.push_back(s);
  }
  if (!out.found.empty()) {
    out.decomposition = greedy(minimal);
    if (out.decomposition.empty()) out.decomposition = greedy(out.found);
  }

  out.chain.subspaces.push_back(BitMatrix(0, dim));
  if (!out.decomposition.empty()) {
    BitMatrix acc(0, dim);
    for (std::size_t i = 0; i + 1 < out.decomposition.size(); ++i) {
      acc = subspace_sum(acc, out.decomposition[i]);
      out.chain.subspaces.push_back(acc);
    }
  } else {
    for (const auto& s : out.found) {
      const auto& top = out.chain.subspaces.back();
      if (s.rows() > top.rows() && subspace_contains(s, top)) out.chain.subspaces.push_back(s);
    }
  }
  out.chain.subspaces.push_back(BitMatrix::identity(dim));
  return out;
}

InvariantChain invariant_subspaces(const MatrixGroup& g) { return analyze_invariants(g.generators(), g.dim()).chain; }

BitMatrix quotient_action(const BitMatrix& g, const BitMatrix& lower, const BitMatrix& upper) {
  const std::size_t d = upper.cols();
  EchelonBasis span(d);
  for (const auto& r : lower.row_vectors()) span.insert(r);
  std::vector<BitVector> complement;
  for (const auto& r : upper.row_vectors()) {
    if (span.insert(r)) complement.push_back(r);
  }
  const std::size_t m = complement.size();
  std::vector<BitVector> basis = complement;
  const auto lower_basis = row_space_basis(lower);
  for (const auto& r : lower_basis.row_vectors()) basis.push_back(r);
  const BasisSolver solver(BitMatrix(basis, d));
  std::vector<BitVector> rows(m, BitVector(m));
  for (std::size_t j = 0; j < m; ++j) {
    const auto c = solver.coordinates(g.apply(complement[j]));
    if (!c) throw InvalidArgument("subspace is not invariant under the matrix");
    for (std::size_t i = 0; i < m; ++i) {
      if (c->get(i)) rows[i].set(j);
    }
  }
  return BitMatrix(std::move(rows), m);
}

std::vector<MatrixGroup> restricted_block_group(const MatrixGroup& g, const InvariantChain& chain) {
  if (chain.subspaces.size() < 2) throw InvalidArgument("chain needs at least the zero and the full space");
  std::vector<MatrixGroup> out;
  for (std::size_t i = 1; i < chain.subspaces.size(); ++i) {
    const auto& lower = chain.subspaces[i - 1];
    const auto& upper = chain.subspaces[i];
    if (!subspace_contains(upper, lower) || !is_invariant(g.generators(), upper)) {
      throw InvalidArgument("chain is not an increasing sequence of invariant subspaces");
    }
    std::vector<BitMatrix> gens;
    for (const auto& m : g.generators()) gens.push_back(quotient_action(m, lower, upper));
    out.emplace_back(upper.rows() - lower.rows(), std::move(gens));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The two-block group.

std::vector<BitMatrix> g12_generators(std::size_t k, const std::vector<BitMatrix>& label_generators) {
  std::vector<BitMatrix> out{transversal_cnot(k, CnotDirection::first_controls).m,
                             transversal_cnot(k, CnotDirection::second_controls).m};
  const auto id = BitMatrix::identity(k);
  const BitMatrix zero(k, k);
  for (const auto& l : label_generators) {
    if (l.is_identity()) continue;
    out.push_back(BitMatrix::from_blocks(l, zero, zero, id));
    out.push_back(BitMatrix::from_blocks(id, zero, zero, l));
  }
  return out;
}

G12 build_g12(const CssCode& css, const PermGroup& aut, const G12Options& options) {
  const std::size_t k = css.k();
  if (k < 1) throw InvalidArgument("the two-block group needs k >= 1");
  G12 out;
  out.k = k;
  out.label_generators = logical_generators(css, aut);
  out.g1_structure = analyze_invariants(out.label_generators, k);
  std::vector<BitMatrix> components = out.g1_structure.decomposition;
  if (components.empty()) components.push_back(BitMatrix::identity(k));

  // Each component W lifts to W + W across the two blocks.
  MatrixGroupOptions group_options = options.group;
  std::vector<BitVector> first, second;
  for (const auto& w : components) {
    std::vector<BitVector> rows;
    for (const auto& r : w.row_vectors()) {
      rows.push_back(r.concat(BitVector(k)));
      first.push_back(rows.back());
    }
    for (const auto& r : w.row_vectors()) {
      rows.push_back(BitVector(k).concat(r));
      second.push_back(rows.back());
    }
    group_options.decomposition.push_back(BitMatrix(std::move(rows), 2 * k));
  }
  if (options.first_block_subgroup) {
    std::vector<BitVector> adapted = first;
    adapted.insert(adapted.end(), second.begin(), second.end());
    const auto inv = inverse(BitMatrix(adapted, 2 * k));
    const auto functionals = inv->transpose();
    std::vector<BasePoint> base;
    for (const auto& v : second) base.push_back({v, false});
    for (std::size_t i = 0; i < k; ++i) base.push_back({functionals.row(k + i), true});
    base.insert(base.end(), group_options.base.begin(), group_options.base.end());
    group_options.base = std::move(base);
  }
  out.group = MatrixGroup(2 * k, g12_generators(k, out.label_generators), group_options);
  if (options.first_block_subgroup) {
    std::vector<BitMatrix> parts;
    for (const auto& m : out.group.stabilizer_generators(2 * k)) parts.push_back(m.block(0, 0, k, k));
    MatrixGroupOptions sub;
    sub.decomposition = out.g1_structure.decomposition;
    out.first_block_subgroup = MatrixGroup(k, std::move(parts), sub);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugacy search.

namespace {

// Basis of {X : X a = b X} as k x k matrices.
std::vector<BitMatrix> intertwiners(const BitMatrix& a, const BitMatrix& b) {
  const std::size_t k = a.rows();
  std::vector<BitVector> images;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      BitMatrix e(k, k);
      e = e.with_flipped(r, c);
      images.push_back((e * a + b * e).flatten());
    }
  }
  // Columns of the linear map are the images; kernel of the map.
  const BitMatrix map = BitMatrix(images, k * k).transpose();
  std::vector<BitMatrix> out;
  const auto kernel = kernel_basis(map);
  for (const auto& x : kernel.row_vectors()) out.push_back(BitMatrix::unflatten(x, k, k));
  return out;
}

}  // namespace

std::optional<BitMatrix> find_conjugator(const std::vector<BitMatrix>& elements, const MatrixGroup& group,
                                         const std::vector<BitMatrix>& targets) {
  if (targets.empty()) return BitMatrix::identity(group.dim());
  const std::size_t k = group.dim();
  const auto& a1 = targets[0];
  const auto p1 = char_poly(a1);
  std::optional<Gf2Poly> p2;
  if (targets.size() > 1) p2 = char_poly(targets[1]);
  auto accept = [&](const BitMatrix& x) -> bool {
    const auto xi = inverse(x);
    if (!xi) return false;
    return std::all_of(targets.begin(), targets.end(), [&](const BitMatrix& a) { return group.contains(x * a * *xi); });
  };
  std::unordered_set<BitMatrix, BitMatrixHash> covered;
  for (const auto& h1 : elements) {
    if (covered.count(h1) || char_poly(h1) != p1) continue;
    // Conjugating by the group changes nothing; skip the rest of the class.
    std::vector<BitMatrix> cls{h1};
    covered.insert(h1);
    for (std::size_t head = 0; head < cls.size(); ++head) {
      for (const auto& g : group.generators()) {
        auto c = g * cls[head] * *inverse(g);
        if (covered.insert(c).second) cls.push_back(std::move(c));
      }
    }
    const auto space = intertwiners(a1, h1);
    if (space.empty()) continue;
    auto search = [&](const std::vector<BitMatrix>& basis) -> std::optional<BitMatrix> {
      const std::size_t dim = basis.size();
      if (dim <= 20) {
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << dim); ++mask) {
          BitMatrix x(k, k);
          for (std::size_t i = 0; i < dim; ++i) {
            if ((mask >> i) & 1U) x = x + basis[i];
          }
          if (accept(x)) return x;
        }
      } else {
        std::mt19937_64 rng(dim);
        for (int t = 0; t < 4096; ++t) {
          BitMatrix x(k, k);
          for (std::size_t i = 0; i < dim; ++i) {
            if (rng() & 1) x = x + basis[i];
          }
          if (accept(x)) return x;
        }
      }
      return std::nullopt;
    };
    if (!p2) {
      if (auto x = search(space)) return x;
      continue;
    }
    for (const auto& h2 : elements) {
      if (char_poly(h2) != *p2) continue;
      std::vector<BitVector> cols;
      for (const auto& x : space) cols.push_back((x * targets[1] + h2 * x).flatten());
      const BitMatrix map = BitMatrix(cols, k * k).transpose();
      std::vector<BitMatrix> basis;
      const auto kernel = kernel_basis(map);
      for (const auto& c : kernel.row_vectors()) {
        BitMatrix x(k, k);
        for (std::size_t i = 0; i < space.size(); ++i) {
          if (c.get(i)) x = x + space[i];
        }
        basis.push_back(std::move(x));
      }
      if (basis.empty()) continue;
      if (auto x = search(basis)) return x;
    }
  }
  return std::nullopt;
}

CssCode rebase_logical(const CssCode& css, const BitMatrix& x) {
  return with_logical_basis(css, x.transpose() * css.logical_basis);
}

// ---------------------------------------------------------------------------
// Code families.

std::vector<std::size_t> CyclicBlockStructure::factor_degrees() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.push_back(b.degree);
  return out;
}

CyclicBlockStructure cyclic_block_structure(const CyclicCodeSpec& spec1, const CyclicCodeSpec& spec2) {
  spec1.validate();
  spec2.validate();
  if (spec1.n != spec2.n || !spec1.g.divides(spec2.g)) {
    throw InvalidArgument("inner generator polynomial is not a multiple of the outer one");
  }
  CyclicBlockStructure out;
  out.h = spec2.g / spec1.g;
  const std::size_t n = spec1.n;
  std::vector<std::pair<Gf2Poly, int>> factors;
  if (out.h.degree() > 0) factors = factor(out.h);
  const auto css = css_from_pair(cyclic(spec1), cyclic(spec2));
  // v'[i] = v[i-1]: multiplication by X.
  const auto label = css.k() > 0 ? label_action(css, Permutation::rotation(n, n - 1)) : BitMatrix(0, 0);
  for (const auto& [f, mult] : factors) {
    for (int m = 0; m < mult; ++m) {
      CyclicBlock block;
      block.factor = f;
      block.degree = static_cast<std::size_t>(f.degree());
      block.spanning_possible = n >= block.degree * block.degree;
      const auto kernel = row_space_basis(kernel_basis(evaluate(f, label)));
      const auto restricted = quotient_action(label, BitMatrix(0, css.k()), kernel);
      block.shift_algebra_dim = restricted.rows() ? algebra_span({restricted}).dimension() : 0;
      out.blocks.push_back(std::move(block));
    }
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const CyclicBlock& a, const CyclicBlock& b) { return a.degree > b.degree; });
  return out;
}

bool rm_block_check(std::size_t r, std::size_t s, std::size_t m) {
  if (s < 1 || r + s > m || m > 5) throw InvalidArgument("rm_block_check needs 0 <= r < r+s <= m <= 5");
  std::vector<BitVector> rows;
  std::vector<std::size_t> degree;
  for (const auto& mono : rm_monomials(r + s, m)) {
    if (mono.size() <= r) continue;
    rows.push_back(rm_monomial_word(mono, m));
    degree.push_back(mono.size());
  }
  const auto css = with_logical_basis(css_from_pair(reed_muller(r + s, m), reed_muller(r, m)),
                                      BitMatrix(rows, std::size_t{1} << m));
  for (const auto& p : affine_generators(m)) {
    const auto t1 = induced_action(css, p).t1;
    for (std::size_t i = 0; i < t1.rows(); ++i) {
      for (std::size_t j = 0; j < t1.cols(); ++j) {
        if (t1.get(i, j) && degree[j] > degree[i]) return false;
      }
    }
  }
  return true;
}

}  // namespace cssaut
