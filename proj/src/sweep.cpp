#include "rindler/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "rindler/entanglement.hpp"
#include "rindler/unruh.hpp"

namespace rindler {

namespace {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min(sweep_thread_cap(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Ratios past ~224 underflow r to exactly zero; the entropy limit there is 0.
double entropy_at(double r) { return r > 0.0 ? closed_form_entropy(r) : 0.0; }

}  // namespace

void SweepConfig::validate() const {
  if (steps < 2) throw std::domain_error("sweep needs at least 2 steps");
  if (!(min < max)) throw std::domain_error("sweep requires min < max");
  if (spacing == Spacing::log && min <= 0.0) {
    throw std::domain_error("log spacing requires positive endpoints");
  }
  if (parameterization == Parameterization::by_r) {
    if (!(min > 0.0 && max <= std::numbers::pi / 4.0)) {
      throw std::domain_error("r grid must lie within (0, pi/4]");
    }
  } else if (!(min > 0.0)) {
    throw std::domain_error("ratio and acceleration grids must be positive");
  }
}

std::vector<double> make_grid(double min, double max, int steps, Spacing spacing) {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  if (spacing == Spacing::linear) {
    const double step = (max - min) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid[i] = min + i * step;
  } else {
    const double lmin = std::log(min);
    const double step = (std::log(max) - lmin) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid[i] = std::exp(lmin + i * step);
  }
  grid.front() = min;
  grid.back() = max;
  return grid;
}

SweepResult entropy_curve(const SweepConfig& config) {
  config.validate();
  const std::vector<double> grid =
      make_grid(config.min, config.max, config.steps, config.spacing);
  SweepResult out;
  out.rows.resize(grid.size());
  switch (config.parameterization) {
    case Parameterization::by_r:
      out.columns = {"r", "entropy"};
      parallel_for(grid.size(), [&](std::size_t i) {
        out.rows[i] = {grid[i], closed_form_entropy(grid[i])};
      });
      break;
    case Parameterization::by_ratio:
      out.columns = {"ratio", "r", "entropy"};
      parallel_for(grid.size(), [&](std::size_t i) {
        const double r = squeezing_parameter(grid[i], 1.0);
        out.rows[i] = {grid[i], r, entropy_at(r)};
      });
      break;
    case Parameterization::by_physical:
      if (mode_frequency(config.k, config.k_perp, config.m) == 0.0) {
        throw std::domain_error("physical sweep has degenerate dispersion (omega = 0)");
      }
      out.columns = {"a", "omega", "r", "entropy"};
      parallel_for(grid.size(), [&](std::size_t i) {
        const UnruhParams p =
            UnruhParams::from_physical(grid[i], config.k, config.k_perp, config.m);
        out.rows[i] = {p.acceleration, p.omega, p.r, entropy_at(p.r)};
      });
      break;
  }
  return out;
}

SweepResult expansion_error_table(const std::vector<double>& ratios) {
  for (double ratio : ratios) {
    if (!(ratio > 0.0)) throw std::domain_error("ratios must be positive");
  }
  SweepResult out;
  out.columns = {"ratio", "s_exact", "s_asymptotic", "abs_error"};
  out.rows.resize(ratios.size());
  parallel_for(ratios.size(), [&](std::size_t i) {
    const double exact = entropy_at(squeezing_parameter(ratios[i], 1.0));
    const double asymptotic = asymptotic_entropy(ratios[i], 1.0);
    out.rows[i] = {ratios[i], exact, asymptotic, std::abs(exact - asymptotic)};
  });
  return out;
}

std::size_t sweep_thread_cap() {
  const char* env = std::getenv("RINDLER_FERMIONS_THREADS");
  if (env == nullptr || *env == '\0') {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
  char* end = nullptr;
  const long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1) {
    throw std::domain_error("RINDLER_FERMIONS_THREADS must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace rindler
