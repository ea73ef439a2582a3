// Finite fermionic Fock space on an ordered register of modes.
//
// Basis states are occupation-number configurations. The ordered-product
// convention fixes all signs: |b0 b1 ... b(M-1)> = (c0^dag)^b0 (c1^dag)^b1
// ... |vac>, so a ladder operator on mode i picks up a parity sign counting
// occupied modes strictly before i in register order.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rindler {

using Complex = std::complex<double>;

// Amplitudes below this magnitude may be dropped from sparse maps.
inline constexpr double kAmplitudePrune = 1e-14;

// Norm tolerance for states labeled normalized.
inline constexpr double kNormTolerance = 1e-10;

enum class Species { particle, antiparticle };
enum class Frame { Minkowski, RindlerI, RindlerII };

std::string to_string(Species s);
std::string to_string(Frame f);
Species species_from_string(std::string_view s);
Frame frame_from_string(std::string_view s);

// A single mode: signed momentum tag, particle/antiparticle, frame.
struct ModeLabel {
  int momentum = 0;
  Species species = Species::particle;
  Frame frame = Frame::Minkowski;

  auto operator<=>(const ModeLabel&) const = default;
};

// "particle:1:RindlerI" and friends; inverse of parse_mode_label.
std::string to_string(const ModeLabel& label);
ModeLabel parse_mode_label(std::string_view text);

// Ordered list of unique mode labels. The ordering is fixed at construction;
// every sign convention downstream depends on it.
class ModeRegister {
 public:
  explicit ModeRegister(std::vector<ModeLabel> modes);

  std::size_t size() const { return modes_.size(); }
  std::size_t dim() const { return std::size_t{1} << modes_.size(); }
  const ModeLabel& mode(std::size_t i) const;
  const std::vector<ModeLabel>& modes() const { return modes_; }
  bool contains(const ModeLabel& label) const;
  // Position of a label, or throws std::invalid_argument.
  std::size_t index_of(const ModeLabel& label) const;

  bool operator==(const ModeRegister&) const = default;

 private:
  std::vector<ModeLabel> modes_;
};

// Occupation pattern over M modes. Stored so that mode 0 is the most
// significant bit: the packed word equals the basis index used by dense
// operators, and the bit string prints register-first-to-last.
class BasisState {
 public:
  BasisState(std::uint32_t index, std::size_t num_modes);
  static BasisState vacuum(std::size_t num_modes);
  static BasisState from_bits(std::string_view bits);

  std::size_t size() const { return size_; }
  std::uint32_t index() const { return word_; }
  bool occupied(std::size_t mode) const;
  std::size_t occupied_count() const;
  // +1 or -1: parity of the number of occupied modes strictly before `mode`.
  int parity_before(std::size_t mode) const;
  BasisState with_occupation(std::size_t mode, bool occupied) const;
  std::string bits() const;

  auto operator<=>(const BasisState&) const = default;

 private:
  std::uint32_t word_ = 0;
  std::uint8_t size_ = 0;
};

// Sparse complex amplitude map over the basis states of a fixed register.
// The empty map is the zero vector, which is distinct from the vacuum
// basis state and is a legal un-normalized value.
class StateVector {
 public:
  explicit StateVector(ModeRegister reg);
  static StateVector basis_state(ModeRegister reg, const BasisState& bs);
  static StateVector basis_state(ModeRegister reg, std::string_view bits);

  const ModeRegister& mode_register() const { return reg_; }
  std::size_t dim() const { return reg_.dim(); }
  const std::map<BasisState, Complex>& amplitudes() const { return amps_; }
  Complex amplitude(const BasisState& bs) const;

  // amps[bs] += value, pruning results below kAmplitudePrune.
  void accumulate(const BasisState& bs, Complex value);

  double norm() const;
  bool is_zero() const { return amps_.empty(); }

  // Checks |norm - 1| <= kNormTolerance and flags the state; throws
  // std::invalid_argument otherwise. Intermediates stay unflagged.
  StateVector& label_normalized();
  bool labeled_normalized() const { return normalized_; }

  StateVector scaled(Complex factor) const;

  friend StateVector operator+(const StateVector& a, const StateVector& b);
  friend StateVector operator-(const StateVector& a, const StateVector& b);

 private:
  ModeRegister reg_;
  std::map<BasisState, Complex> amps_;
  bool normalized_ = false;
};

enum class LadderKind { creation, annihilation };

// Dense complex operator on the 2^M space of a register. M is capped at 12;
// beyond that the dense representation stops being sensible.
class OperatorMatrix {
 public:
  OperatorMatrix(ModeRegister reg, Eigen::MatrixXcd entries);
  static OperatorMatrix identity(ModeRegister reg);

  const ModeRegister& mode_register() const { return reg_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  OperatorMatrix adjoint() const;
  StateVector apply(const StateVector& state) const;

  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(Complex scalar, const OperatorMatrix& m);

 private:
  ModeRegister reg_;
  Eigen::MatrixXcd entries_;
};

// c_i^dag |...>: zero on an occupied mode, else flips the bit with the
// parity sign. Result is un-normalized by construction.
StateVector apply_creation(const StateVector& state, std::size_t mode_index);
// Adjoint action: zero on an empty mode, same parity convention.
StateVector apply_annihilation(const StateVector& state, std::size_t mode_index);

OperatorMatrix operator_matrix(const ModeRegister& reg, std::size_t mode_index,
                               LadderKind kind);

// <x|y>, conjugate-linear in x. Registers must match exactly.
Complex inner_product(const StateVector& x, const StateVector& y);

// State on the concatenated register; mode-label sets must be disjoint.
// Amplitudes multiply; the concatenated ordering keeps products ordered, so
// no extra signs appear.
StateVector tensor_product(const StateVector& x, const StateVector& y);

// Re-expresses a state on a register holding the same labels in a different
// order, including the fermionic permutation sign per basis state.
StateVector reorder_modes(const StateVector& state, const ModeRegister& target);

Eigen::VectorXcd to_dense(const StateVector& state);
StateVector from_dense(const ModeRegister& reg, const Eigen::VectorXcd& vec);

}  // namespace rindler
