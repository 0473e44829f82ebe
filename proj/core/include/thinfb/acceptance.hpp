#pragma once
// The acceptance suite: twelve numbered criteria, each printing measured
// values against tolerances.  Shared by the `validate` subcommand and the
// test binary.

#include <iosfwd>
#include <string>
#include <vector>

namespace thinfb {

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::vector<std::string> detail;  // one line per sub-check
};

// Runs criteria whose name contains `filter` (or all when empty), streaming
// a pass/fail table to `log`.  Returns one outcome per executed criterion.
std::vector<CriterionOutcome> run_acceptance(const std::string& filter, std::ostream& log);

}  // namespace thinfb
