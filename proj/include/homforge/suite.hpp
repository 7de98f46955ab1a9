#ifndef HOMFORGE_SUITE_HPP
#define HOMFORGE_SUITE_HPP

#include <string>
#include <utility>
#include <vector>

namespace homforge {

// Knobs for the acceptance suite and the reporting front end. A fixed
// config gives a byte-identical report payload; wall-clock timings live
// outside the deterministic part and are only surfaced on request.
struct RunConfig {
  int construction_cap = 4096;
  unsigned long long cell_cap = 1000000;
  unsigned long long witness_cell_cap = 200000;
  unsigned long long seed = 7;
  std::vector<int> q_list = {3, 4, 5, 7, 8, 9};
};

struct CheckRecord {
  std::string name;    // stable identifier, one per criterion
  std::string anchor;  // the statement being verified, spelled out
  std::string status;  // "pass", "fail" or "skipped"
  std::vector<std::pair<std::string, std::string>> payload;
  double elapsed = 0.0;  // seconds, non-deterministic by nature
};

struct SuiteReport {
  RunConfig config;
  std::vector<CheckRecord> checks;
  bool all_pass = false;     // every check passed
  bool any_skipped = false;  // a cap pre-empted a check

  // "[PASS] 01 cyclic-homology-table ... (0.4s)", one line per check
  std::string to_text() const;
};

// Runs the ten acceptance checks in a fixed order inside this process, so
// echelon caches warmed by one check serve the later ones. A cap overflow
// turns the affected check into a skip instead of an abort.
SuiteReport run_acceptance_suite(const RunConfig& config = {});

}  // namespace homforge

#endif
