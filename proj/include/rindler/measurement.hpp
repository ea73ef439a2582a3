// Projective detection of a Rindler particle or antiparticle, the resulting
// Minkowski-frame pair states, and the brute-force Rindler-side oracle that
// rederives them from the operator algebra.

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rindler/fock.hpp"
#include "rindler/unruh.hpp"

namespace rindler {

// One detection event: which momentum the detector fired on and whether it
// saw a particle or an antiparticle.
struct MeasurementOutcome {
  int momentum = 1;
  Species species = Species::particle;
};

// P = sec(r) ci^dag cj^dag exp(-tan(r) ci^dag cj^dag); the exponential
// truncates to I - tan(r) ci^dag cj^dag by nilpotency. Norm-preserving on
// the pair vacuum, annihilates the doubly occupied pair. r = 0 is rejected:
// the detected-particle branch has probability zero there.
OperatorMatrix projector_particle(double r, const ModeRegister& reg,
                                  std::pair<std::size_t, std::size_t> pair);

// A = -sec(r) ci^dag cj^dag exp(+tan(r) ci^dag cj^dag) on the antiparticle
// sector pair. Takes the antiparticle vacuum to -|11>.
OperatorMatrix projector_antiparticle(double r, const ModeRegister& reg,
                                      std::pair<std::size_t, std::size_t> pair);

// sin(r)|00> + cos(r)|11> on minkowski_pair_register(k): vacuum plus pair
// production as seen by the inertial observer after a particle detection.
StateVector post_state_particle(double r, int k = 1);

// sin(r)|00> - cos(r)|11> on minkowski_antiparticle_pair_register(k).
StateVector post_state_antiparticle(double r, int k = 1);

// Builds the pair vacuum in the Rindler basis, applies the particle
// projector, and rotates back with U(r)^dag to read off Minkowski
// occupations. Must reproduce post_state_particle up to a global phase;
// returned on minkowski_pair_register(k) so the two compare directly.
StateVector rindler_oracle_particle(double r, int k = 1);

// Tensor product of per-outcome post states on disjoint pair registers,
// in outcome order. Momentum tags must be distinct; outcomes whose pair
// registers overlap (k paired against -k across species) surface as a
// label collision.
StateVector multi_mode_post_state(std::span<const MeasurementOutcome> outcomes,
                                  std::span<const double> r_values);

// max |a*phase - b| over the basis, with the phase chosen from the largest
// amplitude. Reports the phase rather than hiding it.
struct PhaseComparison {
  double max_deviation = 0.0;
  Complex phase{1.0, 0.0};
};
PhaseComparison compare_up_to_global_phase(const StateVector& a, const StateVector& b);

}  // namespace rindler
