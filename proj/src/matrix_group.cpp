#include "cssaut/matrix_group.hpp"

#include <bit>
#include <random>
#include <unordered_set>

#include "cssaut/errors.hpp"

namespace cssaut {

BigInt gl2_order(std::size_t n) {
  BigInt order = 1;
  const BigInt q_n = BigInt(1) << n;
  for (std::size_t i = 0; i < n; ++i) order *= q_n - (BigInt(1) << i);
  return order;
}

namespace {

constexpr std::uint64_t kDualBit = std::uint64_t{1} << 32;

std::uint32_t pack_vector(const BitVector& v) { return static_cast<std::uint32_t>(v.low_word()); }

}  // namespace

MatrixGroup::Packed MatrixGroup::pack(const BitMatrix& m) const {
  const auto mi = inverse(m);
  if (!mi) throw InvalidArgument("matrix group generator is singular");
  Packed p{std::vector<std::uint32_t>(dim_, 0), std::vector<std::uint32_t>(dim_, 0)};
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (m.get(r, c)) p.col[c] |= 1U << r;
      if (mi->get(r, c)) p.inv[c] |= 1U << r;
    }
  }
  return p;
}

BitMatrix MatrixGroup::unpack(const Packed& p) const {
  std::vector<BitVector> rows(dim_, BitVector(dim_));
  for (std::size_t c = 0; c < dim_; ++c) {
    for (std::size_t r = 0; r < dim_; ++r) {
      if ((p.col[c] >> r) & 1U) rows[r].set(c);
    }
  }
  return BitMatrix(std::move(rows), dim_);
}

MatrixGroup::Packed MatrixGroup::identity() const {
  Packed p{std::vector<std::uint32_t>(dim_), std::vector<std::uint32_t>(dim_)};
  for (std::size_t i = 0; i < dim_; ++i) p.col[i] = p.inv[i] = 1U << i;
  return p;
}

namespace {

std::uint32_t apply_columns(const std::vector<std::uint32_t>& col, std::uint32_t v) {
  std::uint32_t out = 0;
  while (v) {
    out ^= col[static_cast<std::size_t>(std::countr_zero(v))];
    v &= v - 1;
  }
  return out;
}

}  // namespace

MatrixGroup::Packed MatrixGroup::mul(const Packed& a, const Packed& b) const {
  Packed p{std::vector<std::uint32_t>(dim_), std::vector<std::uint32_t>(dim_)};
  for (std::size_t j = 0; j < dim_; ++j) {
    p.col[j] = apply_columns(a.col, b.col[j]);
    p.inv[j] = apply_columns(b.inv, a.inv[j]);
  }
  return p;
}

bool MatrixGroup::is_identity(const Packed& a) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a.col[i] != (1U << i)) return false;
  }
  return true;
}

std::uint64_t MatrixGroup::act(const Packed& g, std::uint64_t point) const {
  const auto v = static_cast<std::uint32_t>(point);
  if (!(point & kDualBit)) return apply_columns(g.col, v);
  // (g^{-T} f)_i = <column i of g^{-1}, f>.
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (std::popcount(g.inv[i] & v) & 1) out |= 1U << i;
  }
  return kDualBit | out;
}

std::uint64_t MatrixGroup::encode(const BasePoint& p) const {
  if (p.v.size() != dim_) throw DimensionError("base point has the wrong length");
  if (p.v.is_zero()) throw InvalidArgument("base point must be nonzero");
  return (p.dual ? kDualBit : 0) | pack_vector(p.v);
}

MatrixGroup::MatrixGroup(std::size_t dim, std::vector<BitMatrix> generators, MatrixGroupOptions options)
    : dim_(dim), generators_(std::move(generators)), orbit_budget_(options.orbit_budget) {
  if (dim_ == 0 || dim_ > 32) throw CapacityError("matrix groups are supported for 1 <= dim <= 32");
  for (const auto& g : generators_) {
    if (g.rows() != dim_ || g.cols() != dim_) throw DimensionError("generator has the wrong size");
  }
  bound_ = gl2_order(dim_);
  std::vector<BasePoint> base = options.base;
  if (!options.decomposition.empty()) {
    std::vector<BitVector> all;
    BigInt bound = 1;
    for (const auto& w : options.decomposition) {
      EchelonBasis span(dim_);
      for (const auto& r : w.row_vectors()) span.insert(r);
      for (const auto& g : generators_) {
        for (const auto& r : w.row_vectors()) {
          if (!span.contains(g.apply(r))) throw InvalidArgument("decomposition component is not invariant");
        }
      }
      bound *= gl2_order(span.dimension());
      for (const auto& r : w.row_vectors()) {
        all.push_back(r);
        base.push_back({r, false});
      }
    }
    if (all.size() != dim_ || rank(BitMatrix(all, dim_)) != dim_) {
      throw InvalidArgument("decomposition components do not form a direct sum of the whole space");
    }
    bound_ = bound;
  }
  EchelonBasis spanned(dim_);
  for (const auto& p : base) {
    if (!p.dual) spanned.insert(p.v);
  }
  for (std::size_t i = 0; i < dim_ && spanned.dimension() < dim_; ++i) {
    const auto e = BitVector::unit(dim_, i);
    if (!spanned.contains(e)) {
      spanned.insert(e);
      base.push_back({e, false});
    }
  }
  std::unordered_set<std::uint64_t> seen;
  for (const auto& p : base) {
    const auto code = encode(p);
    if (!seen.insert(code).second) continue;
    base_.push_back(p);
    Level level;
    level.point = code;
    level.orbit.push_back(code);
    level.tree.emplace(code, Node{code, 0});
    levels_.push_back(std::move(level));
  }
  stored_points_ = levels_.size();

  bool trivial = true;
  for (const auto& g : generators_) trivial = trivial && g.is_identity();
  if (trivial) {
    exact_ = true;
    certificate_ = "trivial";
    return;
  }
  randomized(options.patience, options.seed);
  if (order() == bound_) {
    exact_ = true;
    certificate_ = "bound";
  } else if (deterministic_completion(options.verify_budget)) {
    exact_ = true;
    certificate_ = "schreier";
  }
}

MatrixGroup::Packed MatrixGroup::transversal(const Level& level, std::uint64_t x) const {
  // u_x with u_x(point) = x, built along the tree path: x = s p gives u_x = s u_p.
  Packed u = identity();
  std::vector<std::uint32_t> path;
  while (x != level.point) {
    const auto& node = level.tree.at(x);
    path.push_back(node.gen);
    x = node.parent;
  }
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = mul(strong_[*it], u);
  return u;
}

std::size_t MatrixGroup::sift(Packed& g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const auto& level = levels_[i];
    auto x = act(g, level.point);
    if (!level.tree.count(x)) return i;
    while (x != level.point) {
      const auto& node = level.tree.at(x);
      g = mul(strong_inv_[node.gen], g);
      x = node.parent;
    }
  }
  return levels_.size();
}

void MatrixGroup::extend_orbit(Level& level, std::size_t first_new_gen) {
  const std::size_t old_size = level.orbit.size();
  auto visit = [&](std::uint64_t p, std::uint32_t s) {
    const auto y = act(strong_[s], p);
    if (level.tree.emplace(y, Node{p, s}).second) {
      level.orbit.push_back(y);
      if (++stored_points_ > orbit_budget_) {
        throw CapacityError("matrix group orbits exceed the budget of " + std::to_string(orbit_budget_) + " points");
      }
    }
  };
  for (std::size_t i = 0; i < old_size; ++i) {
    for (std::size_t s = first_new_gen; s < level.gens.size(); ++s) visit(level.orbit[i], level.gens[s]);
  }
  for (std::size_t i = old_size; i < level.orbit.size(); ++i) {
    for (auto s : level.gens) visit(level.orbit[i], s);
  }
}

void MatrixGroup::add_strong(const Packed& h, std::size_t level) {
  const auto index = static_cast<std::uint32_t>(strong_.size());
  strong_.push_back(h);
  strong_inv_.push_back(invert(h));
  for (std::size_t i = 0; i <= level && i < levels_.size(); ++i) {
    levels_[i].gens.push_back(index);
    extend_orbit(levels_[i], levels_[i].gens.size() - 1);
  }
}

void MatrixGroup::randomized(std::size_t patience, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Product replacement.
  std::vector<Packed> state;
  for (const auto& g : generators_) {
    if (!g.is_identity()) state.push_back(pack(g));
  }
  const std::size_t gens = state.size();
  while (state.size() < 10) state.push_back(state[state.size() % gens]);
  Packed acc = identity();
  auto next = [&]() {
    const std::size_t i = rng() % state.size();
    std::size_t j = rng() % (state.size() - 1);
    if (j >= i) ++j;
    const Packed other = (rng() & 1) ? invert(state[j]) : state[j];
    state[i] = (rng() & 1) ? mul(state[i], other) : mul(other, state[i]);
    acc = mul(acc, state[i]);
    return acc;
  };
  for (int i = 0; i < 60; ++i) next();
  // Seed the chain with the generators themselves.
  for (const auto& g : generators_) {
    if (g.is_identity()) continue;
    Packed h = pack(g);
    const auto level = sift(h);
    if (level < levels_.size()) add_strong(h, level);
  }
  std::size_t quiet = 0;
  while (quiet < patience && order() != bound_) {
    Packed h = next();
    const auto level = sift(h);
    if (level == levels_.size()) {
      ++quiet;
    } else {
      quiet = 0;
      add_strong(h, level);
    }
  }
}

bool MatrixGroup::deterministic_completion(std::size_t budget) {
  for (;;) {
    std::size_t cost = 0;
    for (const auto& level : levels_) cost += level.orbit.size() * level.gens.size();
    if (cost > budget) return false;
    bool changed = false;
    for (std::size_t i = levels_.size(); i-- > 0 && !changed;) {
      const auto& level = levels_[i];
      for (std::size_t oi = 0; oi < level.orbit.size() && !changed; ++oi) {
        const auto x = level.orbit[oi];
        const Packed ux = transversal(level, x);
        for (std::size_t si = 0; si < level.gens.size() && !changed; ++si) {
          const auto s = level.gens[si];
          const auto y = act(strong_[s], x);
          Packed h = mul(invert(transversal(level, y)), mul(strong_[s], ux));
          const auto stop = sift(h, i + 1);
          if (stop < levels_.size() || !is_identity(h)) {
            add_strong(h, stop);
            changed = true;
          }
        }
      }
    }
    if (!changed) return true;
  }
}

BigInt MatrixGroup::order() const { return stabilizer_order(0); }

BigInt MatrixGroup::stabilizer_order(std::size_t level) const {
  BigInt order = 1;
  for (std::size_t i = level; i < levels_.size(); ++i) order *= levels_[i].orbit.size();
  return order;
}

bool MatrixGroup::contains(const BitMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_ || !inverse(m)) return false;
  Packed h = pack(m);
  return sift(h) == levels_.size() && is_identity(h);
}

std::vector<BitMatrix> MatrixGroup::stabilizer_generators(std::size_t level) const {
  std::vector<BitMatrix> out;
  if (level >= levels_.size()) return out;
  for (auto s : levels_[level].gens) out.push_back(unpack(strong_[s]));
  return out;
}

std::vector<BitMatrix> enumerate_group(const std::vector<BitMatrix>& generators, std::size_t dim, std::size_t cap) {
  std::unordered_set<BitMatrix, BitMatrixHash> seen;
  std::vector<BitMatrix> out{BitMatrix::identity(dim)};
  seen.insert(out.front());
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : generators) {
      auto next = g * out[head];
      if (seen.insert(next).second) {
        if (out.size() >= cap) throw CapacityError("group has more than " + std::to_string(cap) + " elements");
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

}  // namespace cssaut
