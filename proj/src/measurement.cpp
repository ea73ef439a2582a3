#include "rindler/measurement.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace rindler {

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4.0;

void require_r_open_range(double r) {
  if (!(r > 0.0 && r <= kQuarterPi)) {
    throw std::domain_error("squeezing parameter must lie in (0, pi/4]");
  }
}

// sign * sec(r) N (I - t N) with N = ci^dag cj^dag and t the coefficient in
// the truncated pair exponential.
OperatorMatrix pair_projector(double r, const ModeRegister& reg,
                              std::pair<std::size_t, std::size_t> pair, double t,
                              double sign) {
  require_r_open_range(r);
  const auto [i, j] = pair;
  if (i == j) throw std::invalid_argument("pair indices must be distinct");
  const OperatorMatrix pair_creation =
      operator_matrix(reg, i, LadderKind::creation) *
      operator_matrix(reg, j, LadderKind::creation);
  const OperatorMatrix truncated_exp =
      OperatorMatrix::identity(reg) + Complex{t, 0.0} * pair_creation;
  const double sec_r = 1.0 / std::cos(r);
  return Complex{sign * sec_r, 0.0} * (pair_creation * truncated_exp);
}

StateVector minkowski_pair_state(ModeRegister reg, double r, double sign_on_pair) {
  require_r_open_range(r);
  StateVector out(std::move(reg));
  out.accumulate(BasisState::from_bits("00"), Complex{std::sin(r), 0.0});
  out.accumulate(BasisState::from_bits("11"), Complex{sign_on_pair * std::cos(r), 0.0});
  return out.label_normalized();
}
}  // namespace

OperatorMatrix projector_particle(double r, const ModeRegister& reg,
                                  std::pair<std::size_t, std::size_t> pair) {
  return pair_projector(r, reg, pair, -std::tan(r), +1.0);
}

OperatorMatrix projector_antiparticle(double r, const ModeRegister& reg,
                                      std::pair<std::size_t, std::size_t> pair) {
  return pair_projector(r, reg, pair, +std::tan(r), -1.0);
}

StateVector post_state_particle(double r, int k) {
  return minkowski_pair_state(minkowski_pair_register(k), r, +1.0);
}

StateVector post_state_antiparticle(double r, int k) {
  return minkowski_pair_state(minkowski_antiparticle_pair_register(k), r, -1.0);
}

StateVector rindler_oracle_particle(double r, int k) {
  const ModeRegister rindler_reg = particle_sector_register(k);
  const StateVector vacuum = minkowski_particle_vacuum(r, k);
  const StateVector detected = projector_particle(r, rindler_reg, {0, 1}).apply(vacuum);
  const OperatorMatrix u = squeezing_unitary(r, rindler_reg, {0, 1});
  const Eigen::VectorXcd minkowski_amps = u.entries().adjoint() * to_dense(detected);
  return from_dense(minkowski_pair_register(k), minkowski_amps);
}

StateVector multi_mode_post_state(std::span<const MeasurementOutcome> outcomes,
                                  std::span<const double> r_values) {
  if (outcomes.empty()) throw std::invalid_argument("need at least one outcome");
  if (outcomes.size() != r_values.size()) {
    throw std::invalid_argument("one r value per outcome required");
  }
  std::set<int> tags;
  for (const auto& outcome : outcomes) {
    if (!tags.insert(outcome.momentum).second) {
      throw std::invalid_argument("duplicate momentum tag in measurement record");
    }
  }
  StateVector product =
      outcomes[0].species == Species::particle
          ? post_state_particle(r_values[0], outcomes[0].momentum)
          : post_state_antiparticle(r_values[0], outcomes[0].momentum);
  for (std::size_t n = 1; n < outcomes.size(); ++n) {
    const StateVector next =
        outcomes[n].species == Species::particle
            ? post_state_particle(r_values[n], outcomes[n].momentum)
            : post_state_antiparticle(r_values[n], outcomes[n].momentum);
    product = tensor_product(product, next);
  }
  return product.label_normalized();
}

PhaseComparison compare_up_to_global_phase(const StateVector& a, const StateVector& b) {
  if (a.mode_register().size() != b.mode_register().size()) {
    throw std::invalid_argument("register size mismatch");
  }
  // Phase from the largest amplitude of a against the same basis state in b.
  PhaseComparison out;
  double best = 0.0;
  for (const auto& [bs, amp] : a.amplitudes()) {
    if (std::abs(amp) > best) {
      const Complex other = b.amplitude(BasisState(bs.index(), b.mode_register().size()));
      if (std::abs(other) > 0.0) {
        best = std::abs(amp);
        out.phase = other / amp;
        out.phase /= std::abs(out.phase);
      }
    }
  }
  const Eigen::VectorXcd da = to_dense(a);
  const Eigen::VectorXcd db = to_dense(b);
  out.max_deviation = (da * out.phase - db).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace rindler
