#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qwalk {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0;   // worst residual or error the check saw
  double tolerance = 0;  // bound it was held to
  std::string detail;
  double runtime_ms = 0;
};

struct AcceptanceOptions {
  int theta_grid = 360;             // criterion 6 sweep
  int phi_samples = 5;              // random phi per theta in criteria 2 and 6
  std::optional<double> tol;        // replaces every residual tolerance when set
  std::uint64_t seed = 20240601;
};

/// Runs the ten acceptance criteria in order. Never throws for a failing check;
/// an unexpected exception inside a check is reported as that check failing.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace qwalk
