// Acceptance criteria 1-10 as callable checks. Shared by the `check`
// subcommand and the acceptance test binary.
#pragma once

#include <string>
#include <vector>

namespace l1obstacle {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  ///< measured values vs thresholds
  double seconds = 0.0;
};

std::vector<int> acceptance_criteria();

/// Runs one criterion; exceptions inside are reported as a failure.
CriterionResult run_criterion(int id);

/// One line: `criterion N <name>: PASS|FAIL (<seconds> s) <detail>`.
std::string format_result(const CriterionResult& r);

/// Radius of the concentric-circle Hele-Shaw front found by an independent
/// route: finite differences for (r u')' = r chi{r > r0} on [rK, R] with
/// u(rK) = t, u(R) = 0, and bisection on R until u'(R) = 0.
double radial_fd_radius(double t, double rK, double r0, int cells = 20000);

}  // namespace l1obstacle
