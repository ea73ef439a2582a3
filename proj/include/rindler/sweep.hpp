// Entropy-curve sweeps over r, omega/a, or physical acceleration grids.
// Points are pure evaluations and run on a small thread pool capped by
// RINDLER_FERMIONS_THREADS; rows always come back in grid order.

#pragma once

#include <string>
#include <vector>

namespace rindler {

enum class Spacing { linear, log };
enum class Parameterization { by_r, by_ratio, by_physical };

struct SweepConfig {
  Parameterization parameterization = Parameterization::by_r;
  double min = 0.0;
  double max = 0.0;
  int steps = 0;
  Spacing spacing = Spacing::linear;
  // by_physical sweeps the acceleration with these held fixed.
  double k = 1.0;
  double k_perp = 0.0;
  double m = 0.0;

  // Throws std::domain_error on min >= max, steps < 2, nonpositive log
  // endpoints, or by_r grids leaving (0, pi/4].
  void validate() const;
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Grid endpoints are hit exactly; in particular a by_r grid ending at pi/4
// carries entropy 1 in its final row.
std::vector<double> make_grid(double min, double max, int steps, Spacing spacing);

SweepResult entropy_curve(const SweepConfig& config);

// Rows (ratio, S_exact, S_asymptotic, |error|) for each omega/a ratio.
SweepResult expansion_error_table(const std::vector<double>& ratios);

// Thread cap from RINDLER_FERMIONS_THREADS (positive integer), defaulting
// to the hardware concurrency. Malformed values are a domain error.
std::size_t sweep_thread_cap();

}  // namespace rindler
