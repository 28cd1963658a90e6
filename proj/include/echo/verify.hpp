#pragma once

#include <string>
#include <vector>

namespace echo {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;  // first failure, or a short summary
};

/// Sequence, curve, group, density and family invariants at desk scale.
std::vector<SuiteResult> run_invariant_suites(unsigned threads = 1);

}  // namespace echo
