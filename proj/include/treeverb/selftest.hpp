#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treeverb {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// The full acceptance battery; deterministic (fixed seeds). Prints one
// PASS/FAIL line per criterion to the stream and returns overall success.
bool run_selftest(std::ostream& out);

std::vector<CriterionResult> run_selftest_collect();

}  // namespace treeverb
