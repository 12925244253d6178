#include "cssaut/automorphism.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>

namespace cssaut {

bool is_automorphism(const LinearCode& c, const Permutation& p) {
  if (p.degree() != c.n()) throw DimensionError("permutation degree does not match code length");
  for (const auto& r : c.generator().row_vectors()) {
    if (!c.contains(apply_perm(r, p))) return false;
  }
  return true;
}

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("CSSAUT_NODE_BUDGET")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 5'000'000;
}

namespace detail {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ULL;
  return h ^ (h >> 29);
}

struct Coloring {
  std::vector<std::uint32_t> point;
  std::vector<std::uint32_t> block;
  std::uint32_t point_colors = 0;
  std::uint32_t block_colors = 0;
};

using Signature = std::vector<std::uint32_t>;

// Replaces colors by the rank of each signature among the distinct ones and
// folds the sorted (signature, multiplicity) list into the trace hash.
std::uint32_t relabel(std::vector<Signature>& sigs, std::vector<std::uint32_t>& colors, std::uint64_t& trace) {
  std::vector<std::uint32_t> order(sigs.size());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sigs[a] < sigs[b]; });
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && sigs[order[i]] != sigs[order[i - 1]]) ++next;
    colors[order[i]] = next;
  }
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    ++count;
    if (i + 1 == order.size() || sigs[order[i + 1]] != sigs[order[i]]) {
      std::uint64_t h = 0x51ED27U;
      for (auto v : sigs[order[i]]) h = mix(h, v);
      trace = mix(trace, mix(h, count));
      count = 0;
    }
  }
  return order.empty() ? 0 : next + 1;
}

class Searcher {
 public:
  Searcher(const IncidenceStructure& s, const std::function<bool(const Permutation&)>& accept,
           std::uint64_t budget, SearchStats* stats)
      : s_(s), accept_(accept), budget_(budget), stats_(stats), by_point_(s.points) {
    for (std::uint32_t b = 0; b < s.blocks.size(); ++b) {
      for (const auto& [x, inc] : s.blocks[b].incidences) by_point_[x].emplace_back(b, inc);
    }
  }

  PermGroup run() {
    const std::size_t n = s_.points;
    if (n <= 1) return PermGroup::trivial(n);
    build_left_path();
    const std::size_t depth = left_.size();
    std::vector<std::vector<Permutation>> found(depth);
    for (std::size_t l = depth; l-- > 0;) {
      const auto& node = left_[l];
      std::vector<bool> failed(n, false);
      auto known = orbit_under(node.base_point, found, l);
      for (auto gamma : node.cell) {
        if (known[gamma] || failed[gamma]) continue;
        auto sigma = find_with_prefix(l, gamma, found);
        if (sigma) {
          found[l].push_back(std::move(*sigma));
          known = orbit_under(node.base_point, found, l);
        } else {
          // Points in one orbit of the known stabilizer succeed or fail together.
          const auto same = orbit_under(gamma, found, l);
          for (std::uint32_t x = 0; x < n; ++x) failed[x] = failed[x] || same[x];
        }
      }
    }
    std::vector<Permutation> gens;
    for (const auto& level : found) gens.insert(gens.end(), level.begin(), level.end());
    return PermGroup(n, std::move(gens));
  }

 private:
  struct LeftNode {
    Coloring coloring;
    std::uint32_t target = 0;
    std::vector<std::uint32_t> cell;
    std::uint32_t base_point = 0;
    std::uint64_t child_trace = 0;
  };

  void count_node() {
    ++nodes_;
    if (stats_) stats_->nodes = nodes_;
    if (nodes_ > budget_) {
      std::vector<Permutation> gens;
      for (const auto& level : partial_) gens.insert(gens.end(), level.begin(), level.end());
      throw SearchExhausted("automorphism search exceeded its node budget of " + std::to_string(budget_) +
                                " nodes; the group found so far is a lower bound",
                            PermGroup(s_.points, std::move(gens)));
    }
  }

  std::uint64_t refine(Coloring& c) {
    count_node();
    std::uint64_t trace = 0xC0FFEEULL;
    std::vector<Signature> bsig(s_.blocks.size());
    std::vector<Signature> psig(s_.points);
    for (;;) {
      const auto old_points = c.point_colors;
      const auto old_blocks = c.block_colors;
      for (std::size_t b = 0; b < s_.blocks.size(); ++b) {
        auto& sig = bsig[b];
        sig.clear();
        for (const auto& [x, inc] : s_.blocks[b].incidences) sig.push_back(c.point[x] * 4U + inc);
        std::sort(sig.begin(), sig.end());
        sig.insert(sig.begin(), c.block[b]);
      }
      c.block_colors = relabel(bsig, c.block, trace);
      for (std::size_t x = 0; x < s_.points; ++x) {
        auto& sig = psig[x];
        sig.clear();
        for (const auto& [b, inc] : by_point_[x]) sig.push_back(c.block[b] * 4U + inc);
        std::sort(sig.begin(), sig.end());
        sig.insert(sig.begin(), c.point[x]);
      }
      c.point_colors = relabel(psig, c.point, trace);
      if (c.point_colors == old_points && c.block_colors == old_blocks) break;
    }
    return mix(trace, c.point_colors);
  }

  static std::uint32_t choose_target(const Coloring& c) {
    std::vector<std::uint32_t> sizes(c.point_colors, 0);
    for (auto col : c.point) ++sizes[col];
    std::uint32_t best = 0;
    std::uint32_t best_size = 0;
    for (std::uint32_t col = 0; col < c.point_colors; ++col) {
      if (sizes[col] > 1 && (best_size == 0 || sizes[col] < best_size)) {
        best = col;
        best_size = sizes[col];
      }
    }
    return best;
  }

  static Coloring individualize(const Coloring& c, std::uint32_t v) {
    Coloring out = c;
    out.point[v] = c.point_colors;
    out.point_colors = c.point_colors + 1;
    return out;
  }

  void build_left_path() {
    Coloring c;
    c.point.assign(s_.points, 0);
    c.point_colors = 1;
    c.block.resize(s_.blocks.size());
    std::vector<Signature> tags(s_.blocks.size());
    for (std::size_t b = 0; b < s_.blocks.size(); ++b) tags[b] = {s_.blocks[b].color};
    std::uint64_t unused = 0;
    c.block_colors = relabel(tags, c.block, unused);
    root_trace_ = refine(c);
    while (c.point_colors < s_.points) {
      LeftNode node;
      node.coloring = c;
      node.target = choose_target(c);
      for (std::uint32_t x = 0; x < s_.points; ++x) {
        if (c.point[x] == node.target) node.cell.push_back(x);
      }
      node.base_point = node.cell.front();
      c = individualize(c, node.base_point);
      node.child_trace = refine(c);
      left_.push_back(std::move(node));
    }
    left_leaf_ = c.point;
  }

  // Characteristic vector of the orbit of x under generators found at levels >= l.
  std::vector<bool> orbit_under(std::uint32_t x, const std::vector<std::vector<Permutation>>& found,
                                std::size_t l) const {
    std::vector<bool> seen(s_.points, false);
    std::vector<std::uint32_t> queue{x};
    seen[x] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t m = l; m < found.size(); ++m) {
        for (const auto& g : found[m]) {
          const auto y = g[queue[head]];
          if (!seen[y]) {
            seen[y] = true;
            queue.push_back(y);
          }
        }
      }
    }
    return seen;
  }

  std::optional<Permutation> find_with_prefix(std::size_t l, std::uint32_t gamma,
                                               const std::vector<std::vector<Permutation>>& found) {
    partial_ = found;
    if (gamma == left_[l].base_point) return std::nullopt;
    Coloring c = individualize(left_[l].coloring, gamma);
    if (refine(c) != left_[l].child_trace) return std::nullopt;
    return descend(l + 1, c);
  }

  std::optional<Permutation> descend(std::size_t m, const Coloring& c) {
    if (m == left_.size()) {
      if (c.point_colors != s_.points) return std::nullopt;
      std::vector<std::uint32_t> by_color(s_.points);
      for (std::uint32_t x = 0; x < s_.points; ++x) by_color[c.point[x]] = x;
      std::vector<std::uint32_t> images(s_.points);
      for (std::uint32_t x = 0; x < s_.points; ++x) images[x] = by_color[left_leaf_[x]];
      Permutation sigma(std::move(images));
      if (accept_(sigma)) return sigma;
      return std::nullopt;
    }
    const auto& node = left_[m];
    std::vector<std::uint32_t> cell;
    for (std::uint32_t x = 0; x < s_.points; ++x) {
      if (c.point[x] == node.target) cell.push_back(x);
    }
    if (cell.size() != node.cell.size()) return std::nullopt;
    for (auto v : cell) {
      Coloring child = individualize(c, v);
      if (refine(child) != node.child_trace) continue;
      if (auto sigma = descend(m + 1, child)) return sigma;
    }
    return std::nullopt;
  }

  const IncidenceStructure& s_;
  const std::function<bool(const Permutation&)>& accept_;
  std::uint64_t budget_;
  SearchStats* stats_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> by_point_;
  std::vector<LeftNode> left_;
  std::vector<std::uint32_t> left_leaf_;
  std::uint64_t root_trace_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Permutation>> partial_;
};

}  // namespace

PermGroup search_automorphisms(const IncidenceStructure& structure,
                               const std::function<bool(const Permutation&)>& accept,
                               std::uint64_t node_budget, SearchStats* stats) {
  if (stats) stats->blocks = structure.blocks.size();
  Searcher searcher(structure, accept, node_budget, stats);
  return searcher.run();
}

void add_code_blocks(const LinearCode& c, std::uint32_t tag, IncidenceStructure& out) {
  const LinearCode source = c.k() <= c.n() - c.k() ? c : dual(c);
  if (source.k() == 0) return;
  std::vector<std::vector<BitVector>> by_weight(c.n() + 1);
  for_each_codeword(source.generator(), [&](const BitVector& w) {
    if (!w.is_zero()) by_weight[w.weight()].push_back(w);
  });
  EchelonBasis span(c.n());
  for (std::size_t w = 1; w <= c.n() && span.dimension() < source.k(); ++w) {
    std::sort(by_weight[w].begin(), by_weight[w].end());
    for (const auto& word : by_weight[w]) {
      span.insert(word);
      IncidenceStructure::Block block;
      block.color = tag * static_cast<std::uint32_t>(c.n() + 1) + static_cast<std::uint32_t>(w);
      for (std::uint32_t x = 0; x < c.n(); ++x) {
        if (word.get(x)) block.incidences.emplace_back(x, std::uint8_t{1});
      }
      out.blocks.push_back(std::move(block));
    }
  }
}

}  // namespace detail

PermGroup automorphism_group(const LinearCode& c, const SearchOptions& options, SearchStats* stats) {
  if (c.n() > kMaxSearchDegree) {
    throw InvalidArgument("automorphism search supports n <= " + std::to_string(kMaxSearchDegree));
  }
  detail::IncidenceStructure s;
  s.points = c.n();
  detail::add_code_blocks(c, 0, s);
  return detail::search_automorphisms(
      s, [&](const Permutation& p) { return is_automorphism(c, p); }, options.node_budget, stats);
}

PermGroup intersect_aut(const LinearCode& c1, const LinearCode& c2, const SearchOptions& options,
                        SearchStats* stats) {
  if (c1.n() != c2.n()) throw DimensionError("codes have different lengths");
  if (c1.n() > kMaxSearchDegree) {
    throw InvalidArgument("automorphism search supports n <= " + std::to_string(kMaxSearchDegree));
  }
  detail::IncidenceStructure s;
  s.points = c1.n();
  detail::add_code_blocks(c1, 0, s);
  detail::add_code_blocks(c2, 1, s);
  return detail::search_automorphisms(
      s, [&](const Permutation& p) { return is_automorphism(c1, p) && is_automorphism(c2, p); },
      options.node_budget, stats);
}

PermGroup brute_force_aut(const LinearCode& c) {
  if (c.n() > 8) throw InvalidArgument("brute force automorphism search is limited to n <= 8");
  std::vector<std::uint32_t> images(c.n());
  std::iota(images.begin(), images.end(), 0U);
  std::vector<Permutation> members;
  do {
    Permutation p(images);
    if (is_automorphism(c, p)) members.push_back(std::move(p));
  } while (std::next_permutation(images.begin(), images.end()));
  return group_from_elements(c.n(), members);
}

}  // namespace cssaut
