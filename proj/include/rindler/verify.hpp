// Named invariant checks over all modules, with per-check tolerances and
// observed deviations. Backs the verify CLI command; quick runs the
// single-pair identities, full adds the 4-mode and limit checks.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace rindler {

enum class VerifyLevel { quick, full };

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double deviation = 0.0;
  bool pass = false;
};

std::vector<CheckResult> run_verification(VerifyLevel level);

nlohmann::json verification_report(const std::vector<CheckResult>& checks,
                                   VerifyLevel level);

// Smallest-frequency search: returns an omega in (0, omega_hi) whose pair
// state exceeds the target entropy, located by bisecting the monotone
// entropy-vs-omega crossing. Throws if even omega_hi/2^60 falls short.
double bisect_mode_for_entropy(double target, double a, double omega_hi);

}  // namespace rindler
