#include "cssaut/perm_group.hpp"

#include <algorithm>
#include <deque>

#include "cssaut/errors.hpp"

namespace cssaut {

namespace {

// a then b on points: x -> b[a[x]].
Permutation then(const Permutation& a, const Permutation& b) { return compose(b, a); }

std::optional<std::uint32_t> first_moved(const Permutation& p) {
  for (std::uint32_t x = 0; x < p.degree(); ++x) {
    if (p[x] != x) return x;
  }
  return std::nullopt;
}

}  // namespace

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators) : degree_(degree) {
  for (auto& g : generators) {
    if (g.degree() != degree) throw DimensionError("generator degree does not match group degree");
    if (!g.is_identity() && std::find(generators_.begin(), generators_.end(), g) == generators_.end()) {
      generators_.push_back(std::move(g));
    }
  }
  schreier_sims();
}

void PermGroup::rebuild_orbit(Level& level) const {
  level.transversal.assign(degree_, std::nullopt);
  level.orbit.clear();
  level.transversal[level.base_point] = Permutation::identity(degree_);
  level.orbit.push_back(level.base_point);
  for (std::size_t head = 0; head < level.orbit.size(); ++head) {
    const auto x = level.orbit[head];
    for (const auto& s : level.gens) {
      const auto y = s[x];
      if (!level.transversal[y]) {
        level.transversal[y] = then(*level.transversal[x], s);
        level.orbit.push_back(y);
      }
    }
  }
}

std::size_t PermGroup::strip(Permutation& h) const {
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const auto& level = levels_[l];
    const auto& u = level.transversal[h[level.base_point]];
    if (!u) return l;
    h = then(h, u->inverse());
  }
  return levels_.size();
}

void PermGroup::schreier_sims() {
  base_.clear();
  levels_.clear();
  // Every generator must move some base point.
  for (const auto& g : generators_) {
    const bool moves_base = std::any_of(base_.begin(), base_.end(), [&](std::uint32_t b) { return g[b] != b; });
    if (!moves_base) base_.push_back(*first_moved(g));
  }
  levels_.resize(base_.size());
  for (std::size_t l = 0; l < base_.size(); ++l) {
    levels_[l].base_point = base_[l];
    for (const auto& g : generators_) {
      bool fixes_prefix = true;
      for (std::size_t j = 0; j < l; ++j) fixes_prefix &= g[base_[j]] == base_[j];
      if (fixes_prefix) levels_[l].gens.push_back(g);
    }
    rebuild_orbit(levels_[l]);
  }

  std::size_t i = levels_.size();
  while (i-- > 0) {
    bool restarted = false;
    for (std::size_t oi = 0; oi < levels_[i].orbit.size() && !restarted; ++oi) {
      const auto beta = levels_[i].orbit[oi];
      for (std::size_t si = 0; si < levels_[i].gens.size() && !restarted; ++si) {
        const auto& s = levels_[i].gens[si];
        const auto gamma = s[beta];
        Permutation u_beta_s = then(*levels_[i].transversal[beta], s);
        if (u_beta_s == *levels_[i].transversal[gamma]) continue;
        Permutation h = then(u_beta_s, levels_[i].transversal[gamma]->inverse());
        std::size_t j = strip(h);
        if (j == levels_.size()) {
          if (h.is_identity()) continue;
          const auto moved = *first_moved(h);
          base_.push_back(moved);
          Level fresh;
          fresh.base_point = moved;
          levels_.push_back(std::move(fresh));
        }
        for (std::size_t l = i + 1; l <= j; ++l) {
          levels_[l].gens.push_back(h);
          rebuild_orbit(levels_[l]);
        }
        // Resume from the deepest level that changed; the loop decrement
        // makes this j.
        i = j + 1;
        restarted = true;
      }
    }
  }
}

std::vector<Permutation> PermGroup::strong_generators() const {
  std::vector<Permutation> out;
  for (const auto& level : levels_) {
    for (const auto& g : level.gens) {
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  return out;
}

std::vector<std::uint32_t> PermGroup::basic_orbit(std::size_t level) const { return levels_.at(level).orbit; }

BigInt PermGroup::order() const {
  BigInt order = 1;
  for (const auto& level : levels_) order *= level.orbit.size();
  return order;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  Permutation h = p;
  return strip(h) == levels_.size() && h.is_identity();
}

std::vector<Permutation> PermGroup::elements(std::size_t cap) const {
  if (order() > cap) throw CapacityError("group of order " + order().str() + " exceeds element cap");
  std::vector<Permutation> out{Permutation::identity(degree_)};
  // g = u_{m-1} ... u_1 u_0 in "then" order, deepest level first.
  for (std::size_t l = levels_.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * levels_[l].orbit.size());
    for (const auto& g : out) {
      for (auto x : levels_[l].orbit) next.push_back(then(g, *levels_[l].transversal[x]));
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::uint32_t> PermGroup::orbit(std::uint32_t point) const {
  std::vector<bool> seen(degree_, false);
  std::vector<std::uint32_t> out{point};
  seen[point] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : generators_) {
      const auto y = g[out[head]];
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PermGroup group_from_elements(std::size_t degree, const std::vector<Permutation>& elements) {
  PermGroup g = PermGroup::trivial(degree);
  std::vector<Permutation> gens;
  for (const auto& e : elements) {
    if (!g.contains(e)) {
      gens.push_back(e);
      g = PermGroup(degree, gens);
    }
  }
  return g;
}

}  // namespace cssaut
