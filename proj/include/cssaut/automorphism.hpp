#pragma once

// Permutation automorphism groups of codes.
//
// The search is a backtrack over coordinate images with individualization
// and refinement on a colored point/block incidence structure. Blocks are
// codewords of the lowest weight classes (enough of them to span the code),
// so a permutation preserving the blocks preserves the code. Every candidate
// found at a leaf is checked against the code itself before it is accepted.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cssaut/codes.hpp"
#include "cssaut/errors.hpp"
#include "cssaut/perm_group.hpp"

namespace cssaut {

bool is_automorphism(const LinearCode& c, const Permutation& p);

/// CSSAUT_NODE_BUDGET from the environment, or 5,000,000.
std::uint64_t default_node_budget();

struct SearchOptions {
  std::uint64_t node_budget = default_node_budget();
};

/// Raised when the node budget runs out; carries the subgroup found so far.
class SearchExhausted : public CapacityError {
 public:
  SearchExhausted(const std::string& what, PermGroup partial)
      : CapacityError(what), partial_(std::move(partial)) {}
  const PermGroup& partial() const noexcept { return partial_; }

 private:
  PermGroup partial_;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::size_t blocks = 0;
};

/// Throws InvalidArgument when n exceeds kMaxSearchDegree.
PermGroup automorphism_group(const LinearCode& c, const SearchOptions& options = {},
                             SearchStats* stats = nullptr);
/// Exhaustive filter of all n! permutations (n <= 8).
PermGroup brute_force_aut(const LinearCode& c);
/// Permutations preserving both codes.
PermGroup intersect_aut(const LinearCode& c1, const LinearCode& c2, const SearchOptions& options = {},
                        SearchStats* stats = nullptr);

inline constexpr std::size_t kMaxSearchDegree = 40;

namespace detail {

/// Points 0..points-1 and colored blocks; each incidence carries a small color.
struct IncidenceStructure {
  struct Block {
    std::uint32_t color = 0;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> incidences;  // (point, incidence color)
  };
  std::size_t points = 0;
  std::vector<Block> blocks;
};

/// Group of point permutations preserving the structure and accepted by
/// `accept`. Found permutations have images[x] = image of point x.
PermGroup search_automorphisms(const IncidenceStructure& structure,
                               const std::function<bool(const Permutation&)>& accept,
                               std::uint64_t node_budget, SearchStats* stats = nullptr);

/// Codewords of the smaller of C and its dual, lowest weights first, stopping
/// once the selected weight classes span that code. Each block is tagged with
/// `tag` in its color.
void add_code_blocks(const LinearCode& c, std::uint32_t tag, IncidenceStructure& out);

}  // namespace detail
}  // namespace cssaut
