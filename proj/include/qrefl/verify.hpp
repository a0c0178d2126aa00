#pragma once

// Self-check suite behind `qrefl verify`: cross-checks between independent
// computations of the same quantities. Each check reports its measured defect.

#include <set>
#include <string>
#include <vector>

#include "qrefl/solver.hpp"

namespace qrefl {

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  double defect = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  // Multiplies every tolerance; 0 makes every check fail.
  double tolerance_scale = 1.0;
  // Empty means all groups.
  std::set<std::string> only;
  SolverOptions solver;
  unsigned seed = 20240611u;
};

// mathieu, liouville, unitarity, smatrix, rho, beta.
const std::vector<std::string>& verification_groups();

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

}  // namespace qrefl
