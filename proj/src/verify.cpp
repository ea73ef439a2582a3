#include "rindler/verify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rindler/entanglement.hpp"
#include "rindler/measurement.hpp"
#include "rindler/unruh.hpp"

namespace rindler {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / (n - 1);
  for (int i = 0; i < n; ++i) out[i] = std::exp(llo + i * step);
  return out;
}

std::vector<double> r_grid(int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = (i + 1) * kQuarterPi / n;
  return out;
}

ModeRegister scratch_register(std::size_t m) {
  std::vector<ModeLabel> labels;
  for (std::size_t i = 0; i < m; ++i) {
    labels.push_back({static_cast<int>(i) + 1, Species::particle, Frame::Minkowski});
  }
  return ModeRegister(std::move(labels));
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

CheckResult car_anticommutators() {
  double dev = 0.0;
  for (std::size_t m = 1; m <= 3; ++m) {
    const ModeRegister reg = scratch_register(m);
    const auto d = static_cast<Eigen::Index>(reg.dim());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const auto ai = operator_matrix(reg, i, LadderKind::annihilation).entries();
        const auto aj = operator_matrix(reg, j, LadderKind::annihilation).entries();
        const auto ci = operator_matrix(reg, i, LadderKind::creation).entries();
        const auto cj = operator_matrix(reg, j, LadderKind::creation).entries();
        const Eigen::MatrixXcd delta = i == j ? id : Eigen::MatrixXcd::Zero(d, d);
        dev = std::max(dev, max_abs(ai * cj + cj * ai - delta));
        dev = std::max(dev, max_abs(ai * aj + aj * ai));
        dev = std::max(dev, max_abs(ci * cj + cj * ci));
      }
    }
  }
  return {"fock.car_anticommutators", 1e-12, dev, dev <= 1e-12};
}

CheckResult nilpotency() {
  double dev = 0.0;
  const ModeRegister reg = scratch_register(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto a = operator_matrix(reg, i, LadderKind::annihilation).entries();
    const auto c = operator_matrix(reg, i, LadderKind::creation).entries();
    dev = std::max({dev, max_abs(a * a), max_abs(c * c)});
  }
  return {"fock.nilpotency", 0.0, dev, dev <= 0.0};
}

CheckResult adjointness() {
  double dev = 0.0;
  const ModeRegister reg = scratch_register(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto a = operator_matrix(reg, i, LadderKind::annihilation).entries();
    const auto c = operator_matrix(reg, i, LadderKind::creation).entries();
    dev = std::max(dev, max_abs(a - c.adjoint()));
  }
  return {"fock.adjointness", 0.0, dev, dev <= 0.0};
}

CheckResult apply_matches_matrix() {
  double dev = 0.0;
  const ModeRegister reg = scratch_register(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (auto kind : {LadderKind::creation, LadderKind::annihilation}) {
      const OperatorMatrix op = operator_matrix(reg, i, kind);
      for (std::uint32_t col = 0; col < reg.dim(); ++col) {
        const StateVector basis = StateVector::basis_state(reg, BasisState(col, 3));
        const StateVector applied = kind == LadderKind::creation
                                        ? apply_creation(basis, i)
                                        : apply_annihilation(basis, i);
        dev = std::max(dev,
                       (to_dense(applied) - op.entries().col(col)).cwiseAbs().maxCoeff());
      }
    }
  }
  return {"fock.apply_matches_matrix", 0.0, dev, dev <= 0.0};
}

CheckResult squeezing_identity() {
  double dev = 0.0;
  for (double ratio : log_spaced(1e-4, 1e2, 50)) {
    const double r = squeezing_parameter(ratio, 1.0);
    const double s = std::sin(r);
    dev = std::max(dev, std::abs(s * s - fermi_dirac_occupation(ratio, 1.0)));
  }
  return {"unruh.squeezing_identity", 1e-12, dev, dev <= 1e-12};
}

CheckResult squeezing_monotone() {
  const auto ratios = log_spaced(1e-4, 1e2, 50);
  double worst = -1.0;  // max of r[i+1] - r[i]; strictly negative passes
  for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
    worst = std::max(worst, squeezing_parameter(ratios[i + 1], 1.0) -
                                squeezing_parameter(ratios[i], 1.0));
  }
  return {"unruh.squeezing_monotone", 0.0, worst, worst < 0.0};
}

CheckResult bogoliubov_orthogonality() {
  double dev = 0.0;
  for (double r : {0.0, 0.1, 0.3, kQuarterPi}) {
    const Eigen::Matrix2d p = bogoliubov_matrix(r, Species::particle).entries;
    const Eigen::Matrix2d a = bogoliubov_matrix(r, Species::antiparticle).entries;
    dev = std::max(dev, (p.transpose() * p - Eigen::Matrix2d::Identity())
                            .cwiseAbs()
                            .maxCoeff());
    dev = std::max(dev, std::abs(p.determinant() - 1.0));
    dev = std::max(dev, (p * a - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
    dev = std::max(dev, (a - p.transpose()).cwiseAbs().maxCoeff());
  }
  return {"unruh.bogoliubov_orthogonality", 1e-12, dev, dev <= 1e-12};
}

CheckResult unitary_conjugation() {
  double dev = 0.0;
  const ModeRegister reg = particle_sector_register();
  for (double r : {0.1, 0.3, kQuarterPi}) {
    const OperatorMatrix u = squeezing_unitary(r, reg, {0, 1});
    const OperatorMatrix udag = u.adjoint();
    const OperatorMatrix ai = operator_matrix(reg, 0, LadderKind::annihilation);
    const OperatorMatrix cj = operator_matrix(reg, 1, LadderKind::creation);
    const Complex cos_r{std::cos(r), 0.0};
    const Complex sin_r{std::sin(r), 0.0};
    dev = std::max(dev, max_abs((u * ai * udag - (cos_r * ai - sin_r * cj)).entries()));
    dev = std::max(dev, max_abs((u * cj * udag - (sin_r * ai + cos_r * cj)).entries()));
    dev = std::max(dev, max_abs((u * udag).entries() -
                                Eigen::MatrixXcd::Identity(4, 4)));
  }
  return {"unruh.unitary_conjugation", 1e-12, dev, dev <= 1e-12};
}

CheckResult vacuum_squeezed_state() {
  double dev = 0.0;
  const ModeRegister reg = particle_sector_register();
  const StateVector empty = StateVector::basis_state(reg, "00");
  for (double r : {0.1, 0.3, kQuarterPi}) {
    const StateVector squeezed = squeezing_unitary(r, reg, {0, 1}).apply(empty);
    const StateVector vacuum = minkowski_particle_vacuum(r);
    dev = std::max(dev, (to_dense(squeezed) - to_dense(vacuum)).cwiseAbs().maxCoeff());
  }
  return {"unruh.vacuum_squeezed_state", 1e-12, dev, dev <= 1e-12};
}

CheckResult temperature_consistency() {
  double dev = 0.0;
  for (double a : {0.5, 1.0, 2.0, 2.0 * std::numbers::pi}) {
    for (double omega : {0.1, 1.0, 10.0}) {
      const double lhs = 2.0 * std::numbers::pi * omega / a;
      const double rhs = omega / unruh_temperature(a);
      dev = std::max(dev, std::abs(lhs - rhs) / rhs);
    }
  }
  return {"unruh.temperature_consistency", 1e-14, dev, dev <= 1e-14};
}

CheckResult fermi_dirac_expectation() {
  double dev = 0.0;
  const ModeRegister reg = particle_sector_register();
  const OperatorMatrix number_i =
      operator_matrix(reg, 0, LadderKind::creation) *
      operator_matrix(reg, 0, LadderKind::annihilation);
  for (double ratio : log_spaced(1e-2, 1e1, 20)) {
    const double a = 1.0;
    const StateVector vac = minkowski_particle_vacuum(squeezing_parameter(ratio, a));
    const double expectation = inner_product(vac, number_i.apply(vac)).real();
    const double x = ratio / unruh_temperature(a);
    const double fd = std::exp(-x) / (1.0 + std::exp(-x));
    dev = std::max(dev, std::abs(expectation - fd));
  }
  return {"unruh.fermi_dirac_expectation", 1e-12, dev, dev <= 1e-12};
}

CheckResult oracle_equivalence() {
  double dev = 0.0;
  for (double r : r_grid(12)) {
    dev = std::max(dev, compare_up_to_global_phase(rindler_oracle_particle(r),
                                                   post_state_particle(r))
                            .max_deviation);
  }
  return {"measurement.oracle_equivalence", 1e-10, dev, dev <= 1e-10};
}

CheckResult post_state_norms() {
  double dev = 0.0;
  for (double r : r_grid(12)) {
    dev = std::max(dev, std::abs(post_state_particle(r).norm() - 1.0));
    dev = std::max(dev, std::abs(post_state_antiparticle(r).norm() - 1.0));
    const ModeRegister reg = particle_sector_register();
    const StateVector projected =
        projector_particle(r, reg, {0, 1}).apply(minkowski_particle_vacuum(r));
    dev = std::max(dev, std::abs(projected.norm() - 1.0));
  }
  return {"measurement.post_state_norms", 1e-12, dev, dev <= 1e-12};
}

CheckResult closed_form_vs_eigenvalue() {
  double dev = 0.0;
  const std::size_t keep_antiparticle[] = {1};
  for (double r : r_grid(25)) {
    const double eig = von_neumann_entropy(
        partial_trace(density_matrix(post_state_particle(r)), keep_antiparticle));
    dev = std::max(dev, std::abs(eig - closed_form_entropy(r)));
  }
  return {"entanglement.closed_form_vs_eigenvalue", 1e-10, dev, dev <= 1e-10};
}

CheckResult csc_tan_form_identity() {
  // The csc/tan expression evaluated literally where it is
  // well-conditioned, against the stable implementation.
  double dev = 0.0;
  for (double r : r_grid(40)) {
    if (r < 0.01) continue;
    const double s2 = std::sin(r) * std::sin(r);
    const double t2 = std::tan(r) * std::tan(r);
    const double literal = std::log2(1.0 / s2) + (1.0 - s2) * std::log2(t2);
    dev = std::max(dev, std::abs(literal - closed_form_entropy(r)));
  }
  return {"entanglement.csc_tan_form_identity", 1e-12, dev, dev <= 1e-12};
}

CheckResult entropy_monotonic_positive() {
  const auto grid = r_grid(1000);
  double prev = 0.0;  // closed_form_entropy > 0 on the whole domain
  double worst = -1.0;
  bool positive = true;
  for (double r : grid) {
    const double s = closed_form_entropy(r);
    if (!(s > 0.0)) positive = false;
    worst = std::max(worst, prev - s);  // needs prev < s strictly
    prev = s;
  }
  return {"entanglement.entropy_monotonic_positive", 0.0, worst,
          positive && worst < 0.0};
}

CheckResult subsystem_symmetry() {
  double dev = 0.0;
  const std::size_t keep_first[] = {0};
  const std::size_t keep_second[] = {1};
  for (double r : r_grid(12)) {
    const DensityMatrix rho = density_matrix(post_state_particle(r));
    dev = std::max(dev, std::abs(von_neumann_entropy(partial_trace(rho, keep_first)) -
                                 von_neumann_entropy(partial_trace(rho, keep_second))));
  }
  return {"entanglement.subsystem_symmetry", 1e-10, dev, dev <= 1e-10};
}

// ---- full-level checks ----

ModeRegister four_mode_register(int k1, int k2) {
  std::vector<ModeLabel> labels = particle_sector_register(k1).modes();
  for (const auto& label : antiparticle_sector_register(k2).modes()) {
    labels.push_back(label);
  }
  return ModeRegister(std::move(labels));
}

CheckResult commutation_4mode() {
  const ModeRegister reg = four_mode_register(1, 2);
  const OperatorMatrix p = projector_particle(0.2, reg, {0, 1});
  const OperatorMatrix a = projector_antiparticle(0.5, reg, {2, 3});
  const double dev = max_abs((p * a - a * p).entries());
  return {"measurement.commutation_4mode", 1e-12, dev, dev <= 1e-12};
}

CheckResult multi_mode_order_independence() {
  const MeasurementOutcome first{1, Species::particle};
  const MeasurementOutcome second{2, Species::antiparticle};
  const MeasurementOutcome forward_outcomes[] = {first, second};
  const MeasurementOutcome reversed_outcomes[] = {second, first};
  const double forward_r[] = {0.2, 0.5};
  const double reversed_r[] = {0.5, 0.2};
  const StateVector forward = multi_mode_post_state(forward_outcomes, forward_r);
  const StateVector reversed = multi_mode_post_state(reversed_outcomes, reversed_r);
  const auto cmp = compare_up_to_global_phase(
      reorder_modes(reversed, forward.mode_register()), forward);
  return {"measurement.multi_mode_order_independence", 1e-12, cmp.max_deviation,
          cmp.max_deviation <= 1e-12};
}

CheckResult multi_mode_rindler_oracle() {
  // Squeeze both sectors from the empty register, measure P on the particle
  // pair and A on the antiparticle pair, and rotate each sector back to
  // Minkowski occupations. The antiparticle sector squeezes with U^dag.
  const double r1 = 0.2;
  const double r2 = 0.5;
  const ModeRegister reg = four_mode_register(1, 2);
  const OperatorMatrix u1 = squeezing_unitary(r1, reg, {0, 1});
  const OperatorMatrix u2 = squeezing_unitary(r2, reg, {2, 3});
  const StateVector empty = StateVector::basis_state(reg, "0000");
  const StateVector vacuum = u1.apply(u2.adjoint().apply(empty));
  const OperatorMatrix p = projector_particle(r1, reg, {0, 1});
  const OperatorMatrix a = projector_antiparticle(r2, reg, {2, 3});
  const StateVector detected = a.apply(p.apply(vacuum));
  const StateVector in_minkowski = u1.adjoint().apply(u2.apply(detected));

  const MeasurementOutcome outcomes[] = {{1, Species::particle},
                                         {2, Species::antiparticle}};
  const double rs[] = {r1, r2};
  const StateVector expected = multi_mode_post_state(outcomes, rs);
  const double dev =
      (to_dense(in_minkowski) - to_dense(expected)).cwiseAbs().maxCoeff();
  return {"measurement.multi_mode_rindler_oracle", 1e-10, dev, dev <= 1e-10};
}

CheckResult exclusion_double_projector() {
  double dev = 0.0;
  const ModeRegister reg = particle_sector_register();
  for (double r : {0.1, 0.3, 0.7}) {
    const OperatorMatrix p = projector_particle(r, reg, {0, 1});
    dev = std::max(dev, p.apply(p.apply(minkowski_particle_vacuum(r))).norm());
  }
  return {"measurement.exclusion_double_projector", 1e-12, dev, dev <= 1e-12};
}

CheckResult antiparticle_entropy_parity() {
  double dev = 0.0;
  const std::size_t keep_second[] = {1};
  for (double r : r_grid(12)) {
    const double particle = von_neumann_entropy(
        partial_trace(density_matrix(post_state_particle(r)), keep_second));
    const double antiparticle = von_neumann_entropy(
        partial_trace(density_matrix(post_state_antiparticle(r)), keep_second));
    dev = std::max(dev, std::abs(particle - antiparticle));
  }
  return {"entanglement.antiparticle_entropy_parity", 1e-12, dev, dev <= 1e-12};
}

CheckResult asymptotic_convergence_order() {
  const auto error_at = [](double ratio) {
    return std::abs(closed_form_entropy(squeezing_parameter(ratio, 1.0)) -
                    asymptotic_entropy(ratio, 1.0));
  };
  const double ratio = error_at(0.02) / error_at(0.01);
  return {"entanglement.asymptotic_convergence_order", 2.0, std::abs(ratio - 16.0),
          ratio >= 14.0 && ratio <= 18.0};
}

CheckResult bell_endpoint() {
  double dev = std::abs(closed_form_entropy(kQuarterPi) - 1.0);
  const StateVector bell = post_state_particle(kQuarterPi);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  dev = std::max(dev,
                 std::abs(bell.amplitude(BasisState::from_bits("00")) - inv_sqrt2));
  dev = std::max(dev,
                 std::abs(bell.amplitude(BasisState::from_bits("11")) - inv_sqrt2));
  dev = std::max(dev, std::abs(bell_fidelity(bell) - 1.0));
  return {"entanglement.bell_endpoint", 1e-12, dev, dev <= 1e-12};
}

CheckResult limits_massless_massive() {
  bool pass = true;
  double dev = 0.0;
  try {
    const double omega = bisect_mode_for_entropy(0.999, 1.0, 1.0);
    const double achieved = closed_form_entropy(squeezing_parameter(omega, 1.0));
    dev = std::max(dev, 0.999 - achieved);
    pass = pass && achieved > 0.999;
  } catch (const std::exception&) {
    pass = false;
  }
  // Massive case: omega >= m, so the entropy supremum sits at omega = m and
  // stays far from 1.
  const double s_at_m = closed_form_entropy(squeezing_parameter(1.0, 1.0));
  for (double k : log_spaced(1e-3, 1e2, 30)) {
    const UnruhParams p = UnruhParams::from_physical(1.0, k, 0.0, 1.0);
    const double s = closed_form_entropy(p.r);
    dev = std::max(dev, s - s_at_m);
    pass = pass && s <= s_at_m + 1e-15;
  }
  pass = pass && (1.0 - s_at_m) > 0.9;
  return {"entanglement.limits_massless_massive", 1e-15, dev, pass};
}

}  // namespace

std::vector<CheckResult> run_verification(VerifyLevel level) {
  std::vector<CheckResult> checks = {
      car_anticommutators(),
      nilpotency(),
      adjointness(),
      apply_matches_matrix(),
      squeezing_identity(),
      squeezing_monotone(),
      bogoliubov_orthogonality(),
      unitary_conjugation(),
      vacuum_squeezed_state(),
      temperature_consistency(),
      fermi_dirac_expectation(),
      oracle_equivalence(),
      post_state_norms(),
      closed_form_vs_eigenvalue(),
      csc_tan_form_identity(),
      entropy_monotonic_positive(),
      subsystem_symmetry(),
  };
  if (level == VerifyLevel::full) {
    checks.push_back(commutation_4mode());
    checks.push_back(multi_mode_order_independence());
    checks.push_back(multi_mode_rindler_oracle());
    checks.push_back(exclusion_double_projector());
    checks.push_back(antiparticle_entropy_parity());
    checks.push_back(asymptotic_convergence_order());
    checks.push_back(bell_endpoint());
    checks.push_back(limits_massless_massive());
  }
  return checks;
}

nlohmann::json verification_report(const std::vector<CheckResult>& checks,
                                   VerifyLevel level) {
  nlohmann::json entries = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& check : checks) {
    all_pass = all_pass && check.pass;
    entries.push_back({{"name", check.name},
                       {"tolerance", check.tolerance},
                       {"max_deviation", check.deviation},
                       {"pass", check.pass}});
  }
  return {{"level", level == VerifyLevel::quick ? "quick" : "full"},
          {"checks", entries},
          {"pass", all_pass}};
}

double bisect_mode_for_entropy(double target, double a, double omega_hi) {
  if (!(target > 0.0 && target < 1.0)) {
    throw std::domain_error("target entropy must lie in (0, 1)");
  }
  const auto entropy_at = [a](double omega) {
    return closed_form_entropy(squeezing_parameter(omega, a));
  };
  double lo = 0.0;  // entropy -> 1 as omega -> 0
  double hi = omega_hi;
  while (entropy_at(hi) > target) hi *= 2.0;
  double witness = -1.0;
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (entropy_at(mid) > target) {
      witness = mid;
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (witness <= 0.0) throw std::runtime_error("bisection found no qualifying mode");
  return witness;
}

}  // namespace rindler
