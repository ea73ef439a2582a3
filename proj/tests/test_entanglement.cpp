#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rindler/entanglement.hpp"
#include "rindler/measurement.hpp"
#include "rindler/unruh.hpp"
#include "rindler/verify.hpp"

using namespace rindler;

namespace {
constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Independent oracle: binary entropy of p in bits.
double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

StateVector random_two_mode_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  StateVector state(minkowski_pair_register(1));
  for (std::uint32_t idx = 0; idx < 4; ++idx) {
    state.accumulate(BasisState(idx, 2), {unit(rng), unit(rng)});
  }
  return state.scaled({1.0 / state.norm(), 0.0});
}
}  // namespace

TEST_CASE("density matrix of the post-measurement state has the sin/cos structure") {
  const double r = 0.3;
  const DensityMatrix rho = density_matrix(post_state_particle(r));
  const double s2 = std::sin(r) * std::sin(r);
  const double c2 = std::cos(r) * std::cos(r);
  const double sc = std::sin(r) * std::cos(r);
  // Basis order |00>, |01>, |10>, |11>.
  CHECK(std::abs(rho.entries()(0, 0) - s2) <= 1e-15);
  CHECK(std::abs(rho.entries()(0, 3) - sc) <= 1e-15);
  CHECK(std::abs(rho.entries()(3, 0) - sc) <= 1e-15);
  CHECK(std::abs(rho.entries()(3, 3) - c2) <= 1e-15);
  double off = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if ((i == 0 || i == 3) && (j == 0 || j == 3)) continue;
      off = std::max(off, std::abs(rho.entries()(i, j)));
    }
  }
  CHECK(off == 0.0);
  CHECK(std::abs(rho.entries().trace() - Complex{1.0, 0.0}) <= 1e-15);
}

TEST_CASE("density matrix of a Bell state has 1/2 corners") {
  const DensityMatrix rho = density_matrix(post_state_particle(kQuarterPi));
  for (auto [i, j] : {std::pair{0, 0}, {0, 3}, {3, 0}, {3, 3}}) {
    CHECK(std::abs(rho.entries()(i, j) - 0.5) <= 1e-15);
  }
}

TEST_CASE("density matrix requires normalization") {
  StateVector bad(minkowski_pair_register(1));
  bad.accumulate(BasisState::from_bits("00"), {0.5, 0.0});
  CHECK_THROWS_AS(density_matrix(bad), std::invalid_argument);
}

TEST_CASE("partial trace") {
  SUBCASE("keeping the antiparticle mode gives diag(sin^2, cos^2)") {
    const double r = 0.3;
    const std::size_t keep[] = {1};
    const DensityMatrix reduced =
        partial_trace(density_matrix(post_state_particle(r)), keep);
    CHECK(std::abs(reduced.entries()(0, 0) - std::sin(r) * std::sin(r)) <= 1e-15);
    CHECK(std::abs(reduced.entries()(1, 1) - std::cos(r) * std::cos(r)) <= 1e-15);
    CHECK(std::abs(reduced.entries()(0, 1)) <= 1e-15);
  }
  SUBCASE("Bell state reduces to the maximally mixed state") {
    const std::size_t keep[] = {0};
    const DensityMatrix reduced =
        partial_trace(density_matrix(post_state_particle(kQuarterPi)), keep);
    CHECK(std::abs(reduced.entries()(0, 0) - 0.5) <= 1e-15);
    CHECK(std::abs(reduced.entries()(1, 1) - 0.5) <= 1e-15);
  }
  SUBCASE("product state reduces to a pure projector") {
    const ModeRegister reg = minkowski_pair_register(1);
    const std::size_t keep[] = {0};
    const DensityMatrix reduced =
        partial_trace(density_matrix(StateVector::basis_state(reg, "01")), keep);
    CHECK(reduced.entries()(0, 0) == Complex{1.0, 0.0});
    CHECK(reduced.entries()(1, 1) == Complex{0.0, 0.0});
  }
  SUBCASE("keep set must be a nonempty proper subset") {
    const DensityMatrix rho = density_matrix(post_state_particle(0.3));
    CHECK_THROWS_AS(partial_trace(rho, {}), std::domain_error);
    const std::size_t all[] = {0, 1};
    CHECK_THROWS_AS(partial_trace(rho, all), std::domain_error);
    const std::size_t oob[] = {5};
    CHECK_THROWS_AS(partial_trace(rho, oob), std::out_of_range);
  }
}

TEST_CASE("von Neumann entropy") {
  const ModeRegister one_mode({{1, Species::particle, Frame::Minkowski}});

  SUBCASE("maximally mixed qubit carries one bit") {
    const DensityMatrix rho(one_mode, Eigen::MatrixXcd::Identity(2, 2) * 0.5);
    CHECK(std::abs(von_neumann_entropy(rho) - 1.0) <= 1e-14);
  }
  SUBCASE("pure states carry none") {
    Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(2, 2);
    pure(0, 0) = 1.0;
    CHECK(von_neumann_entropy(DensityMatrix(one_mode, pure)) == 0.0);
  }
  SUBCASE("diag(sin^2, cos^2) at r = pi/8 against the binary-entropy oracle") {
    const double s2 = std::sin(kQuarterPi / 2.0) * std::sin(kQuarterPi / 2.0);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = s2;
    d(1, 1) = 1.0 - s2;
    const double entropy = von_neumann_entropy(DensityMatrix(one_mode, d));
    CHECK(std::abs(entropy - 0.6008760366928561) <= 1e-12);
    CHECK(std::abs(entropy - binary_entropy(s2)) <= 1e-12);
  }
  SUBCASE("a genuinely negative eigenvalue is a positivity error") {
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix(one_mode, bad)),
                    std::domain_error);
  }
}

TEST_CASE("closed-form entropy") {
  SUBCASE("Bell point") {
    CHECK(std::abs(closed_form_entropy(kQuarterPi) - 1.0) <= 1e-12);
  }
  SUBCASE("r = pi/8") {
    CHECK(std::abs(closed_form_entropy(kQuarterPi / 2.0) - 0.6008760366928561) <=
          1e-12);
  }
  SUBCASE("r at frequency ratio 1") {
    const double r = squeezing_parameter(1.0, 1.0);
    CHECK(std::abs(closed_form_entropy(r) - 0.0195879310586888) <= 1e-12);
  }
  SUBCASE("agrees with the binary entropy of sin^2 r") {
    for (int i = 1; i <= 40; ++i) {
      const double r = i * kQuarterPi / 40.0;
      CHECK(std::abs(closed_form_entropy(r) - binary_entropy(std::sin(r) * std::sin(r))) <=
            1e-12);
    }
  }
  SUBCASE("agrees with the literal csc/tan expression where well-conditioned") {
    for (int i = 1; i <= 40; ++i) {
      const double r = 0.01 + (kQuarterPi - 0.01) * i / 40.0;
      const double s2 = std::sin(r) * std::sin(r);
      const double literal =
          std::log2(1.0 / s2) + (1.0 - s2) * std::log2(std::tan(r) * std::tan(r));
      CHECK(std::abs(closed_form_entropy(r) - literal) <= 1e-12);
    }
  }
  SUBCASE("strictly increasing and positive on a 1000-point grid") {
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double s = closed_form_entropy(i * kQuarterPi / 1000.0);
      CHECK(s > prev);
      CHECK(s > 0.0);
      prev = s;
    }
  }
  SUBCASE("tiny r tends to zero without overflow") {
    const double r100 = squeezing_parameter(100.0, 1.0);  // ~3.65e-137
    const double s = closed_form_entropy(r100);
    CHECK(std::isfinite(s));
    CHECK(s >= 0.0);
    CHECK(s < 1e-80);
    CHECK(closed_form_entropy(1e-300) == 0.0);  // sin^2 underflows
  }
  SUBCASE("r = 0 exactly is a domain error") {
    CHECK_THROWS_AS(closed_form_entropy(0.0), std::domain_error);
    CHECK_THROWS_AS(closed_form_entropy(1.0), std::domain_error);
  }
}

TEST_CASE("closed form equals the eigenvalue route across the grid") {
  const std::size_t keep[] = {1};
  for (int i = 1; i <= 24; ++i) {
    const double r = i * kQuarterPi / 24.0;
    const double eig =
        von_neumann_entropy(partial_trace(density_matrix(post_state_particle(r)), keep));
    CHECK(std::abs(eig - closed_form_entropy(r)) <= 1e-10);
  }
}

TEST_CASE("complementary reductions of pure two-mode states agree") {
  const std::size_t keep_first[] = {0};
  const std::size_t keep_second[] = {1};
  std::mt19937 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const StateVector psi = random_two_mode_state(rng);
    const DensityMatrix rho = density_matrix(psi);
    CHECK(std::abs(von_neumann_entropy(partial_trace(rho, keep_first)) -
                   von_neumann_entropy(partial_trace(rho, keep_second))) <= 1e-10);
  }
}

TEST_CASE("antiparticle branch carries the same entanglement") {
  const std::size_t keep[] = {1};
  for (int i = 1; i <= 12; ++i) {
    const double r = i * kQuarterPi / 12.0;
    const double particle = von_neumann_entropy(
        partial_trace(density_matrix(post_state_particle(r)), keep));
    const double antiparticle = von_neumann_entropy(
        partial_trace(density_matrix(post_state_antiparticle(r)), keep));
    CHECK(std::abs(particle - antiparticle) <= 1e-12);
  }
}

TEST_CASE("asymptotic entropy") {
  SUBCASE("omega = 0 gives exactly 1") { CHECK(asymptotic_entropy(0.0, 1.0) == 1.0); }
  SUBCASE("ratio 0.1 against the high-precision coefficient") {
    // pi^2/(2 ln 2) = 7.1194146624937527
    CHECK(std::abs(asymptotic_entropy(0.1, 1.0) - 0.9288058533750625) <= 1e-15);
  }
  SUBCASE("remainder is fourth order in the ratio") {
    const auto error_at = [](double ratio) {
      return std::abs(closed_form_entropy(squeezing_parameter(ratio, 1.0)) -
                      asymptotic_entropy(ratio, 1.0));
    };
    const double q = error_at(0.02) / error_at(0.01);
    CHECK(q >= 14.0);
    CHECK(q <= 18.0);
    // Direct magnitude at ratio 0.1: 3.3653889e-3.
    CHECK(error_at(0.1) == doctest::Approx(3.3653889227e-3).epsilon(1e-8));
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(asymptotic_entropy(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(asymptotic_entropy(-1.0, 1.0), std::domain_error);
  }
}

TEST_CASE("bell fidelity") {
  CHECK(std::abs(bell_fidelity(post_state_particle(kQuarterPi)) - 1.0) <= 1e-12);
  CHECK(bell_fidelity(post_state_particle(1e-9)) == doctest::Approx(0.5).epsilon(1e-8));
  // (sin 0.3 + cos 0.3)^2 / 2 = 0.7823212366975176
  CHECK(std::abs(bell_fidelity(post_state_particle(0.3)) - 0.7823212366975176) <=
        1e-14);

  SUBCASE("matches the closed form across the grid") {
    for (int i = 1; i <= 12; ++i) {
      const double r = i * kQuarterPi / 12.0;
      const double expected = std::pow(std::sin(r) + std::cos(r), 2) / 2.0;
      CHECK(std::abs(bell_fidelity(post_state_particle(r)) - expected) <= 1e-13);
    }
  }
  SUBCASE("fidelity 1 only at the Bell point") {
    for (double r : {0.1, 0.3, 0.7}) {
      CHECK(bell_fidelity(post_state_particle(r)) < 1.0);
    }
  }
  SUBCASE("needs a 2-mode register") {
    const ModeRegister reg({{1, Species::particle, Frame::Minkowski}});
    CHECK_THROWS_AS(bell_fidelity(StateVector::basis_state(reg, "0")),
                    std::invalid_argument);
  }
}

TEST_CASE("massless modes reach any entropy target; massive modes cannot") {
  SUBCASE("bisection exhibits a low mode with S > 0.999 at a = 1, m = 0") {
    const double omega = bisect_mode_for_entropy(0.999, 1.0, 1.0);
    CHECK(omega > 0.0);
    const UnruhParams p = UnruhParams::from_physical(1.0, omega, 0.0, 0.0);
    CHECK(closed_form_entropy(p.r) > 0.999);
  }
  SUBCASE("m = 1, a = 1 is capped at the omega = m entropy, far below 1") {
    const double cap = closed_form_entropy(squeezing_parameter(1.0, 1.0));
    CHECK(1.0 - cap > 0.9);  // cap = 0.0195879...
    for (double k : {1e-3, 0.1, 1.0, 10.0}) {
      const UnruhParams p = UnruhParams::from_physical(1.0, k, 0.0, 1.0);
      CHECK(closed_form_entropy(p.r) <= cap + 1e-15);
    }
  }
}
