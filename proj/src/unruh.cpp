#include "rindler/unruh.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace rindler {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kQuarterPi = std::numbers::pi / 4.0;

void require_r_in_closed_range(double r) {
  if (!(r >= 0.0 && r <= kQuarterPi)) {
    throw std::domain_error("squeezing parameter must lie in [0, pi/4]");
  }
}
}  // namespace

double mode_frequency(double k, double k_perp, double m) {
  if (m < 0.0) throw std::domain_error("mass must be >= 0");
  if (k_perp < 0.0) throw std::domain_error("transverse momentum must be >= 0");
  return std::sqrt(k * k + k_perp * k_perp + m * m);
}

double squeezing_parameter(double omega, double a) {
  if (a <= 0.0) throw std::domain_error("acceleration must be > 0");
  if (omega < 0.0) throw std::domain_error("frequency must be >= 0");
  if (omega == 0.0) return kQuarterPi;
  const double x = 2.0 * kPi * omega / a;
  // sin r = exp(-x/2) / sqrt(1 + exp(-x)): stable for every x >= 0.
  const double sin_r = std::exp(-0.5 * x) / std::sqrt(1.0 + std::exp(-x));
  return std::asin(sin_r);
}

double unruh_temperature(double a) {
  if (a <= 0.0) throw std::domain_error("acceleration must be > 0");
  return a / (2.0 * kPi);
}

double fermi_dirac_occupation(double omega, double a) {
  if (a <= 0.0) throw std::domain_error("acceleration must be > 0");
  if (omega < 0.0) throw std::domain_error("frequency must be >= 0");
  const double x = 2.0 * kPi * omega / a;
  const double e = std::exp(-x);
  return e / (1.0 + e);
}

UnruhParams UnruhParams::from_physical(double a, double k, double k_perp, double m) {
  if (a <= 0.0) throw std::domain_error("acceleration must be > 0");
  UnruhParams p;
  p.acceleration = a;
  p.k = k;
  p.k_perp = k_perp;
  p.m = m;
  p.omega = mode_frequency(k, k_perp, m);
  if (p.omega == 0.0) {
    throw std::domain_error(
        "degenerate dispersion (omega = 0); use infinite_acceleration_limit");
  }
  p.r = squeezing_parameter(p.omega, a);
  return p;
}

UnruhParams UnruhParams::infinite_acceleration_limit(double a) {
  if (a <= 0.0) throw std::domain_error("acceleration must be > 0");
  UnruhParams p;
  p.acceleration = a;
  p.omega = 0.0;
  p.r = kQuarterPi;
  return p;
}

BogoliubovMatrix bogoliubov_matrix(double r, Species sector) {
  require_r_in_closed_range(r);
  const double c = std::cos(r);
  const double s = std::sin(r);
  BogoliubovMatrix out;
  out.sector = sector;
  if (sector == Species::particle) {
    out.entries << c, -s, s, c;
  } else {
    out.entries << c, s, -s, c;
  }
  return out;
}

OperatorMatrix squeezing_unitary(double r, const ModeRegister& reg,
                                 std::pair<std::size_t, std::size_t> pair) {
  require_r_in_closed_range(r);
  const auto [i, j] = pair;
  if (i >= reg.size() || j >= reg.size()) {
    throw std::out_of_range("pair index out of range");
  }
  if (i == j) throw std::invalid_argument("pair indices must be distinct");
  const OperatorMatrix ci = operator_matrix(reg, i, LadderKind::annihilation);
  const OperatorMatrix cj = operator_matrix(reg, j, LadderKind::annihilation);
  const OperatorMatrix generator =
      operator_matrix(reg, i, LadderKind::creation) *
          operator_matrix(reg, j, LadderKind::creation) -
      cj * ci;
  const Eigen::MatrixXcd u = (r * generator.entries()).exp();
  return {reg, u};
}

ModeRegister particle_sector_register(int k) {
  return ModeRegister{{{k, Species::particle, Frame::RindlerI},
                       {-k, Species::antiparticle, Frame::RindlerII}}};
}

ModeRegister antiparticle_sector_register(int k) {
  return ModeRegister{{{k, Species::antiparticle, Frame::RindlerI},
                       {-k, Species::particle, Frame::RindlerII}}};
}

ModeRegister minkowski_pair_register(int k) {
  return ModeRegister{{{k, Species::particle, Frame::Minkowski},
                       {-k, Species::antiparticle, Frame::Minkowski}}};
}

ModeRegister minkowski_antiparticle_pair_register(int k) {
  return ModeRegister{{{k, Species::antiparticle, Frame::Minkowski},
                       {-k, Species::particle, Frame::Minkowski}}};
}

namespace {
StateVector pair_vacuum(ModeRegister reg, double r, double sign_on_pair) {
  if (!(r > 0.0 && r <= kQuarterPi)) {
    throw std::domain_error("squeezing parameter must lie in (0, pi/4]");
  }
  StateVector out(std::move(reg));
  out.accumulate(BasisState::from_bits("00"), Complex{std::cos(r), 0.0});
  out.accumulate(BasisState::from_bits("11"), Complex{sign_on_pair * std::sin(r), 0.0});
  return out.label_normalized();
}
}  // namespace

StateVector minkowski_particle_vacuum(double r, int k) {
  return pair_vacuum(particle_sector_register(k), r, +1.0);
}

StateVector minkowski_antiparticle_vacuum(double r, int k) {
  return pair_vacuum(antiparticle_sector_register(k), r, -1.0);
}

}  // namespace rindler
