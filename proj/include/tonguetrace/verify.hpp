#pragma once

// Self-contained property suites behind the `verify` command: algebra closure
// checks, secular-free invariants, monodromy determinant law, the closed-form
// impulsive trace oracle, and the order-refinement comparison.

#include <string>
#include <vector>

namespace tt {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  bool fast = false;
  bool flip_impulse_jump = false;  // negative control: must fail the oracle row
};

std::vector<CheckResult> run_verification(const VerifyOptions& opt = {});

}  // namespace tt
