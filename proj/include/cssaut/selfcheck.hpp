#pragma once

// Reproduction of the published example values, grouped into numbered
// criteria. Shared by the acceptance binary and the `selfcheck` command.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace cssaut {

enum class ClaimStatus { match, mismatch, flagged };
std::string to_string(ClaimStatus status);

/// One compared value. `expected` is the published or formula value,
/// `computed` what the library produced.
struct ClaimEntry {
  std::string claim;
  std::string expected;
  std::string computed;
  ClaimStatus status = ClaimStatus::match;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<ClaimEntry> claims;
  std::string note;  // analysis for failures or flagged values
  double seconds = 0;
};

struct SelfcheckOptions {
  std::string data_dir;
  std::size_t synthesis_targets = 100;  // per k
  std::size_t random_codes = 50;
  std::uint64_t seed = 2024;
  unsigned threads = 1;
  std::set<int> only;  // empty: all criteria
};

inline constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id, const SelfcheckOptions& options);
std::vector<CriterionResult> run_selfcheck(const SelfcheckOptions& options);

}  // namespace cssaut
