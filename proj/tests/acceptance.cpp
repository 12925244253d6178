// Acceptance run: one PASS/FAIL line per criterion, then the compared values.
//
// The process exits 0 once every criterion has been evaluated, whatever the
// verdicts; pass --strict to exit 1 when any criterion fails.

#include <cstdio>
#include <cstring>
#include <string>

#include "cssaut/selfcheck.hpp"

int main(int argc, char** argv) {
  bool strict = false;
  bool verbose = true;
  cssaut::SelfcheckOptions options;
  options.data_dir = CSSAUT_DATA_DIR;
  options.threads = 4;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--strict") == 0) strict = true;
    if (std::strcmp(argv[i], "--quiet") == 0) verbose = false;
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) options.only.insert(std::stoi(argv[++i]));
  }
  int failed = 0;
  int evaluated = 0;
  for (const auto& r : cssaut::run_selfcheck(options)) {
    ++evaluated;
    failed += !r.pass;
    std::printf("%s %2d %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    if (!verbose) continue;
    for (const auto& c : r.claims) {
      std::printf("       [%s] %s: expected %s, computed %s\n", cssaut::to_string(c.status).c_str(), c.claim.c_str(),
                  c.expected.c_str(), c.computed.c_str());
    }
    if (!r.note.empty()) std::printf("       note: %s\n", r.note.c_str());
  }
  std::printf("criteria evaluated: %d, passed: %d, failed: %d\n", evaluated, evaluated - failed, failed);
  return strict && failed > 0 ? 1 : 0;
}
