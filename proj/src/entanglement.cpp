#include "rindler/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

namespace rindler {

namespace {
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenClamp = 1e-12;
constexpr double kEigenError = 1e-10;
constexpr double kLn2 = std::numbers::ln2;
}  // namespace

DensityMatrix::DensityMatrix(ModeRegister reg, Eigen::MatrixXcd entries)
    : reg_(std::move(reg)), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(reg_.dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw std::invalid_argument("density matrix must be 2^M x 2^M");
  }
  const double herm_dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian to 1e-12");
  }
  const double trace_dev = std::abs(entries_.trace() - Complex{1.0, 0.0});
  if (trace_dev > kTraceTol) {
    throw std::invalid_argument("density matrix trace deviates from 1");
  }
}

DensityMatrix density_matrix(const StateVector& state) {
  if (std::abs(state.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument("density matrix requires a normalized state");
  }
  const Eigen::VectorXcd v = to_dense(state);
  return {state.mode_register(), v * v.adjoint()};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const ModeRegister& reg = rho.mode_register();
  const std::size_t m = reg.size();
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("keep set has duplicate indices");
  }
  for (std::size_t i : kept) {
    if (i >= m) throw std::out_of_range("keep index out of range");
  }
  if (kept.empty() || kept.size() == m) {
    throw std::domain_error("keep set must be a nonempty proper subset");
  }
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
  }

  // Compose a full basis index from kept and traced sub-indices, both
  // enumerated in register order (mode 0 most significant).
  const auto compose = [&](std::uint32_t kept_idx, std::uint32_t traced_idx) {
    BasisState full = BasisState::vacuum(m);
    for (std::size_t p = 0; p < kept.size(); ++p) {
      const bool bit = (kept_idx >> (kept.size() - 1 - p)) & 1u;
      if (bit) full = full.with_occupation(kept[p], true);
    }
    for (std::size_t p = 0; p < traced.size(); ++p) {
      const bool bit = (traced_idx >> (traced.size() - 1 - p)) & 1u;
      if (bit) full = full.with_occupation(traced[p], true);
    }
    return full.index();
  };

  std::vector<ModeLabel> kept_labels;
  for (std::size_t i : kept) kept_labels.push_back(reg.mode(i));
  const std::size_t dk = std::size_t{1} << kept.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(dk, dk);
  for (std::uint32_t row = 0; row < dk; ++row) {
    for (std::uint32_t col = 0; col < dk; ++col) {
      Complex sum{0.0, 0.0};
      for (std::uint32_t t = 0; t < dt; ++t) {
        sum += rho.entries()(compose(row, t), compose(col, t));
      }
      reduced(row, col) = sum;
    }
  }
  return {ModeRegister(std::move(kept_labels)), std::move(reduced)};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue decomposition failed");
  }
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    double lambda = solver.eigenvalues()(i);
    if (lambda < -kEigenError) {
      throw std::domain_error("density matrix has a negative eigenvalue");
    }
    if (lambda < kEigenClamp) continue;  // includes the 0 log 0 := 0 case
    entropy -= lambda * std::log2(lambda);
  }
  return std::max(entropy, 0.0);
}

double closed_form_entropy(double r) {
  if (!(r > 0.0 && r <= std::numbers::pi / 4.0)) {
    throw std::domain_error("squeezing parameter must lie in (0, pi/4]");
  }
  const double sin_r = std::sin(r);
  const double s = sin_r * sin_r;
  if (s == 0.0) return 0.0;  // underflow below the smallest subnormal
  // -s log2 s - (1-s) log2(1-s); log1p keeps the second term alive when
  // 1-s rounds to 1.
  return -s * std::log2(s) - (1.0 - s) * std::log1p(-s) / kLn2;
}

double asymptotic_entropy(double omega, double a) {
  if (a <= 0.0) throw std::domain_error("acceleration must be > 0");
  if (omega < 0.0) throw std::domain_error("frequency must be >= 0");
  const double ratio = omega / a;
  return 1.0 - std::numbers::pi * std::numbers::pi * ratio * ratio / (2.0 * kLn2);
}

double bell_fidelity(const StateVector& state) {
  if (state.mode_register().size() != 2) {
    throw std::invalid_argument("Bell fidelity requires a 2-mode state");
  }
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const Complex overlap =
      inv_sqrt2 * (state.amplitude(BasisState::from_bits("00")) +
                   state.amplitude(BasisState::from_bits("11")));
  return std::norm(overlap);
}

}  // namespace rindler
