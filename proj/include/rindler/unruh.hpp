// Dispersion, squeezing parameter, Unruh temperature, Bogoliubov rotations,
// and the Minkowski vacua of single-mode Rindler pairs.
//
// Units: c = hbar = k_B = 1. The Bogoliubov phase is fixed to zero
// throughout, so every rotation is real.

#pragma once

#include <utility>

#include "rindler/fock.hpp"

namespace rindler {

// sqrt(k^2 + k_perp^2 + m^2). Returns 0 only when all inputs vanish;
// callers must reject omega = 0 unless they explicitly want the limit.
double mode_frequency(double k, double k_perp, double m);

// r = arccos(exp(pi w / 2a) / sqrt(2 cosh(pi w / a))), evaluated through the
// equivalent logistic form sin^2 r = 1 / (exp(2 pi w / a) + 1), which never
// overflows. Monotone decreasing in w/a, range (0, pi/4]; omega = 0 returns
// exactly pi/4 (the infinite-acceleration limit).
double squeezing_parameter(double omega, double a);

// T = a / 2 pi.
double unruh_temperature(double a);

// Mean Rindler-I particle number in the Minkowski vacuum:
// 1 / (exp(2 pi w / a) + 1) = sin^2 r.
double fermi_dirac_occupation(double omega, double a);

// Physical inputs plus the derived frequency and squeezing parameter.
struct UnruhParams {
  double acceleration = 0.0;
  double k = 0.0;
  double k_perp = 0.0;
  double m = 0.0;
  double omega = 0.0;  // derived
  double r = 0.0;      // derived, in (0, pi/4]

  // Rejects omega == 0; the degenerate dispersion point is only reachable
  // through the explicit limit constructor below.
  static UnruhParams from_physical(double a, double k, double k_perp, double m);
  // omega = 0, r = pi/4 exactly.
  static UnruhParams infinite_acceleration_limit(double a);
};

// 2x2 real rotation relating Minkowski and Rindler ladder operators.
// particle: [[cos r, -sin r], [sin r, cos r]]; antiparticle is its
// transpose. det = 1, orthogonal.
struct BogoliubovMatrix {
  Eigen::Matrix2d entries;
  Species sector = Species::particle;
};

BogoliubovMatrix bogoliubov_matrix(double r, Species sector);

// U(r) = exp(r (ci^dag cj^dag - cj ci)) on the full 2^M space.
// U(r)|0...0> has cos r, sin r on the pair's |00>, |11>, and conjugation
// reproduces both rows of the particle-sector Bogoliubov rotation:
//   U a_i U^dag = cos r a_i - sin r a_j^dag
//   U a_j^dag U^dag = sin r a_i + cos r a_j^dag
OperatorMatrix squeezing_unitary(double r, const ModeRegister& reg,
                                 std::pair<std::size_t, std::size_t> pair);

// Register [(k, particle, RindlerI), (-k, antiparticle, RindlerII)].
ModeRegister particle_sector_register(int k = 1);
// Register [(k, antiparticle, RindlerI), (-k, particle, RindlerII)].
ModeRegister antiparticle_sector_register(int k = 1);
// Register [(k, particle, Minkowski), (-k, antiparticle, Minkowski)].
ModeRegister minkowski_pair_register(int k = 1);
// Register [(k, antiparticle, Minkowski), (-k, particle, Minkowski)].
ModeRegister minkowski_antiparticle_pair_register(int k = 1);

// cos(r)|00> + sin(r)|11> on particle_sector_register(k). The fermionic pair
// exponential truncates exactly, so this closed form is the whole state.
StateVector minkowski_particle_vacuum(double r, int k = 1);

// cos(r)|00> - sin(r)|11> on antiparticle_sector_register(k).
StateVector minkowski_antiparticle_vacuum(double r, int k = 1);

}  // namespace rindler
