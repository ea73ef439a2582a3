// Density matrices, partial traces, and the entanglement entropy of the
// post-measurement pair states, in closed form and by eigenvalues.
// Entropy is base 2 throughout.

#pragma once

#include <span>

#include "rindler/fock.hpp"

namespace rindler {

// Hermitian, unit-trace, positive-semidefinite operator on a register.
// Construction validates hermiticity and trace to 1e-12; eigenvalues are
// allowed to dip to -1e-12 before positivity is considered violated.
class DensityMatrix {
 public:
  DensityMatrix(ModeRegister reg, Eigen::MatrixXcd entries);

  const ModeRegister& mode_register() const { return reg_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

 private:
  ModeRegister reg_;
  Eigen::MatrixXcd entries_;
};

// |psi><psi|. Rejects states whose norm deviates from 1 by more than 1e-8.
DensityMatrix density_matrix(const StateVector& state);

// Reduced density matrix on the kept modes (register order preserved).
// keep must be a nonempty proper subset of mode indices.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

// -sum lambda_i log2 lambda_i. Eigenvalues in [-1e-12, 0) clamp to zero;
// anything below -1e-10 is a positivity error.
double von_neumann_entropy(const DensityMatrix& rho);

// Entropy of the post-measurement pair state as a function of r:
// log2(csc^2 r) + cos^2(r) log2(tan^2 r), evaluated through the identical
// binary-entropy form -s log2 s - (1-s) log2(1-s) with s = sin^2 r, which
// stays accurate down to the smallest representable r. Strictly increasing
// and positive on (0, pi/4], reaching 1 at the Bell point.
double closed_form_entropy(double r);

// Two-term small-ratio expansion 1 - pi^2 w^2 / (2 ln2 a^2); the remainder
// is fourth order in w/a.
double asymptotic_entropy(double omega, double a);

// |<Phi|psi>|^2 against Phi = (|00> + |11>)/sqrt(2) on the state's own
// 2-mode register.
double bell_fidelity(const StateVector& state);

}  // namespace rindler
