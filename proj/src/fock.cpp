#include "rindler/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace rindler {

namespace {

constexpr std::size_t kMaxModes = 24;       // uint32 occupation words
constexpr std::size_t kMaxDenseModes = 12;  // 4096 x 4096 dense ceiling

#ifdef RINDLER_FAULT_INJECTION
// Test-only hook: RINDLER_FERMIONS_FAULT=parity-flip corrupts the
// Jordan-Wigner parity string on the creation side only, which breaks the
// anticommutator algebra so verification failure paths can be exercised.
bool parity_fault_enabled() {
  static const bool enabled = [] {
    const char* v = std::getenv("RINDLER_FERMIONS_FAULT");
    return v != nullptr && std::string_view(v) == "parity-flip";
  }();
  return enabled;
}
#endif

int creation_sign(const BasisState& bs, std::size_t mode) {
  int sign = bs.parity_before(mode);
#ifdef RINDLER_FAULT_INJECTION
  if (parity_fault_enabled()) sign = -sign;
#endif
  return sign;
}

}  // namespace

std::string to_string(Species s) {
  return s == Species::particle ? "particle" : "antiparticle";
}

std::string to_string(Frame f) {
  switch (f) {
    case Frame::Minkowski: return "Minkowski";
    case Frame::RindlerI: return "RindlerI";
    case Frame::RindlerII: return "RindlerII";
  }
  throw std::logic_error("unreachable frame");
}

Species species_from_string(std::string_view s) {
  if (s == "particle") return Species::particle;
  if (s == "antiparticle") return Species::antiparticle;
  throw std::invalid_argument("unknown species: " + std::string(s));
}

Frame frame_from_string(std::string_view s) {
  if (s == "Minkowski") return Frame::Minkowski;
  if (s == "RindlerI") return Frame::RindlerI;
  if (s == "RindlerII") return Frame::RindlerII;
  throw std::invalid_argument("unknown frame: " + std::string(s));
}

std::string to_string(const ModeLabel& label) {
  return to_string(label.species) + ":" + std::to_string(label.momentum) + ":" +
         to_string(label.frame);
}

ModeLabel parse_mode_label(std::string_view text) {
  const auto first = text.find(':');
  const auto second = text.rfind(':');
  if (first == std::string_view::npos || second == first) {
    throw std::invalid_argument("malformed mode label: " + std::string(text));
  }
  ModeLabel label;
  label.species = species_from_string(text.substr(0, first));
  label.frame = frame_from_string(text.substr(second + 1));
  const std::string momentum(text.substr(first + 1, second - first - 1));
  std::size_t used = 0;
  label.momentum = std::stoi(momentum, &used);
  if (used != momentum.size()) {
    throw std::invalid_argument("malformed momentum tag: " + momentum);
  }
  return label;
}

ModeRegister::ModeRegister(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
  if (modes_.empty()) throw std::invalid_argument("register needs at least one mode");
  if (modes_.size() > kMaxModes) {
    throw std::invalid_argument("register limited to 24 modes");
  }
  std::set<ModeLabel> seen(modes_.begin(), modes_.end());
  if (seen.size() != modes_.size()) {
    throw std::invalid_argument("duplicate mode label in register");
  }
}

const ModeLabel& ModeRegister::mode(std::size_t i) const {
  if (i >= modes_.size()) throw std::out_of_range("mode index out of range");
  return modes_[i];
}

bool ModeRegister::contains(const ModeLabel& label) const {
  return std::find(modes_.begin(), modes_.end(), label) != modes_.end();
}

std::size_t ModeRegister::index_of(const ModeLabel& label) const {
  const auto it = std::find(modes_.begin(), modes_.end(), label);
  if (it == modes_.end()) {
    throw std::invalid_argument("label not in register: " + to_string(label));
  }
  return static_cast<std::size_t>(it - modes_.begin());
}

BasisState::BasisState(std::uint32_t index, std::size_t num_modes)
    : word_(index), size_(static_cast<std::uint8_t>(num_modes)) {
  if (num_modes == 0 || num_modes > kMaxModes) {
    throw std::invalid_argument("basis state needs 1..24 modes");
  }
  if (num_modes < 32 && (index >> num_modes) != 0) {
    throw std::out_of_range("basis index exceeds register dimension");
  }
}

BasisState BasisState::vacuum(std::size_t num_modes) { return {0, num_modes}; }

BasisState BasisState::from_bits(std::string_view bits) {
  std::uint32_t word = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bits must be 0/1");
    word = (word << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return {word, bits.size()};
}

bool BasisState::occupied(std::size_t mode) const {
  if (mode >= size_) throw std::out_of_range("mode index out of range");
  return (word_ >> (size_ - 1 - mode)) & 1u;
}

std::size_t BasisState::occupied_count() const {
  return static_cast<std::size_t>(std::popcount(word_));
}

int BasisState::parity_before(std::size_t mode) const {
  if (mode >= size_) throw std::out_of_range("mode index out of range");
  // Modes 0..mode-1 sit above bit position size-mode.
  const int count = std::popcount(word_ >> (size_ - mode));
  return (count & 1) ? -1 : +1;
}

BasisState BasisState::with_occupation(std::size_t mode, bool occupied) const {
  if (mode >= size_) throw std::out_of_range("mode index out of range");
  const std::uint32_t bit = std::uint32_t{1} << (size_ - 1 - mode);
  BasisState out = *this;
  out.word_ = occupied ? (word_ | bit) : (word_ & ~bit);
  return out;
}

std::string BasisState::bits() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (occupied(i)) out[i] = '1';
  }
  return out;
}

StateVector::StateVector(ModeRegister reg) : reg_(std::move(reg)) {}

StateVector StateVector::basis_state(ModeRegister reg, const BasisState& bs) {
  if (bs.size() != reg.size()) {
    throw std::invalid_argument("basis state length must equal register size");
  }
  StateVector out(std::move(reg));
  out.amps_[bs] = Complex{1.0, 0.0};
  out.normalized_ = true;
  return out;
}

StateVector StateVector::basis_state(ModeRegister reg, std::string_view bits) {
  return basis_state(std::move(reg), BasisState::from_bits(bits));
}

Complex StateVector::amplitude(const BasisState& bs) const {
  const auto it = amps_.find(bs);
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

void StateVector::accumulate(const BasisState& bs, Complex value) {
  if (bs.size() != reg_.size()) {
    throw std::invalid_argument("basis state length must equal register size");
  }
  normalized_ = false;
  const auto it = amps_.find(bs);
  Complex sum = (it == amps_.end() ? Complex{0.0, 0.0} : it->second) + value;
  if (std::abs(sum) < kAmplitudePrune) {
    if (it != amps_.end()) amps_.erase(it);
    return;
  }
  amps_[bs] = sum;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& [bs, amp] : amps_) sum += std::norm(amp);
  return std::sqrt(sum);
}

StateVector& StateVector::label_normalized() {
  if (std::abs(norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized to 1e-10");
  }
  normalized_ = true;
  return *this;
}

StateVector StateVector::scaled(Complex factor) const {
  StateVector out(reg_);
  for (const auto& [bs, amp] : amps_) out.accumulate(bs, factor * amp);
  return out;
}

StateVector operator+(const StateVector& a, const StateVector& b) {
  if (a.reg_ != b.reg_) throw std::invalid_argument("register mismatch");
  StateVector out = a;
  out.normalized_ = false;
  for (const auto& [bs, amp] : b.amps_) out.accumulate(bs, amp);
  return out;
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  return a + b.scaled({-1.0, 0.0});
}

OperatorMatrix::OperatorMatrix(ModeRegister reg, Eigen::MatrixXcd entries)
    : reg_(std::move(reg)), entries_(std::move(entries)) {
  if (reg_.size() > kMaxDenseModes) {
    throw std::invalid_argument("dense operators limited to 12 modes");
  }
  const auto d = static_cast<Eigen::Index>(reg_.dim());
  if (entries_.rows() != d || entries_.cols() != d) {
    throw std::invalid_argument("operator entries must be 2^M x 2^M");
  }
}

OperatorMatrix OperatorMatrix::identity(ModeRegister reg) {
  const auto d = static_cast<Eigen::Index>(reg.dim());
  return {std::move(reg), Eigen::MatrixXcd::Identity(d, d)};
}

OperatorMatrix OperatorMatrix::adjoint() const { return {reg_, entries_.adjoint()}; }

StateVector OperatorMatrix::apply(const StateVector& state) const {
  if (state.mode_register() != reg_) throw std::invalid_argument("register mismatch");
  return from_dense(reg_, entries_ * to_dense(state));
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.reg_ != b.reg_) throw std::invalid_argument("register mismatch");
  return {a.reg_, a.entries_ * b.entries_};
}

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.reg_ != b.reg_) throw std::invalid_argument("register mismatch");
  return {a.reg_, a.entries_ + b.entries_};
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.reg_ != b.reg_) throw std::invalid_argument("register mismatch");
  return {a.reg_, a.entries_ - b.entries_};
}

OperatorMatrix operator*(Complex scalar, const OperatorMatrix& m) {
  return {m.reg_, scalar * m.entries_};
}

StateVector apply_creation(const StateVector& state, std::size_t mode_index) {
  if (mode_index >= state.mode_register().size()) {
    throw std::out_of_range("mode index out of range");
  }
  StateVector out(state.mode_register());
  for (const auto& [bs, amp] : state.amplitudes()) {
    if (bs.occupied(mode_index)) continue;
    out.accumulate(bs.with_occupation(mode_index, true),
                   amp * static_cast<double>(creation_sign(bs, mode_index)));
  }
  return out;
}

StateVector apply_annihilation(const StateVector& state, std::size_t mode_index) {
  if (mode_index >= state.mode_register().size()) {
    throw std::out_of_range("mode index out of range");
  }
  StateVector out(state.mode_register());
  for (const auto& [bs, amp] : state.amplitudes()) {
    if (!bs.occupied(mode_index)) continue;
    out.accumulate(bs.with_occupation(mode_index, false),
                   amp * static_cast<double>(bs.parity_before(mode_index)));
  }
  return out;
}

OperatorMatrix operator_matrix(const ModeRegister& reg, std::size_t mode_index,
                               LadderKind kind) {
  if (mode_index >= reg.size()) throw std::out_of_range("mode index out of range");
  const auto d = static_cast<Eigen::Index>(reg.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint32_t col = 0; col < reg.dim(); ++col) {
    const BasisState bs(col, reg.size());
    const bool occ = bs.occupied(mode_index);
    if (kind == LadderKind::creation ? occ : !occ) continue;
    const BasisState image = bs.with_occupation(mode_index, kind == LadderKind::creation);
    m(image.index(), col) = static_cast<double>(kind == LadderKind::creation
                                                    ? creation_sign(bs, mode_index)
                                                    : bs.parity_before(mode_index));
  }
  return {reg, std::move(m)};
}

Complex inner_product(const StateVector& x, const StateVector& y) {
  if (x.mode_register() != y.mode_register()) {
    throw std::invalid_argument("register mismatch");
  }
  Complex sum{0.0, 0.0};
  for (const auto& [bs, ax] : x.amplitudes()) {
    sum += std::conj(ax) * y.amplitude(bs);
  }
  return sum;
}

StateVector tensor_product(const StateVector& x, const StateVector& y) {
  std::vector<ModeLabel> combined = x.mode_register().modes();
  for (const auto& label : y.mode_register().modes()) {
    if (x.mode_register().contains(label)) {
      throw std::invalid_argument("mode label collision: " + to_string(label));
    }
    combined.push_back(label);
  }
  const std::size_t ny = y.mode_register().size();
  StateVector out{ModeRegister(std::move(combined))};
  for (const auto& [bx, ax] : x.amplitudes()) {
    for (const auto& [by, ay] : y.amplitudes()) {
      const std::uint32_t word = (bx.index() << ny) | by.index();
      out.accumulate(BasisState(word, out.mode_register().size()), ax * ay);
    }
  }
  return out;
}

StateVector reorder_modes(const StateVector& state, const ModeRegister& target) {
  const ModeRegister& source = state.mode_register();
  if (source.size() != target.size()) {
    throw std::invalid_argument("register size mismatch");
  }
  // position in target of each source mode
  std::vector<std::size_t> target_pos(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    target_pos[i] = target.index_of(source.mode(i));
  }
  StateVector out(target);
  for (const auto& [bs, amp] : state.amplitudes()) {
    std::vector<std::size_t> occupied_targets;
    BasisState image = BasisState::vacuum(target.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
      if (!bs.occupied(i)) continue;
      occupied_targets.push_back(target_pos[i]);
      image = image.with_occupation(target_pos[i], true);
    }
    // Parity of the permutation restricted to the occupied modes.
    int inversions = 0;
    for (std::size_t a = 0; a < occupied_targets.size(); ++a) {
      for (std::size_t b = a + 1; b < occupied_targets.size(); ++b) {
        if (occupied_targets[a] > occupied_targets[b]) ++inversions;
      }
    }
    out.accumulate(image, (inversions & 1) ? -amp : amp);
  }
  return out;
}

Eigen::VectorXcd to_dense(const StateVector& state) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(state.dim()));
  for (const auto& [bs, amp] : state.amplitudes()) v(bs.index()) = amp;
  return v;
}

StateVector from_dense(const ModeRegister& reg, const Eigen::VectorXcd& vec) {
  if (vec.size() != static_cast<Eigen::Index>(reg.dim())) {
    throw std::invalid_argument("dense vector dimension mismatch");
  }
  StateVector out(reg);
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    if (vec(i) != Complex{0.0, 0.0}) {
      out.accumulate(BasisState(static_cast<std::uint32_t>(i), reg.size()), vec(i));
    }
  }
  return out;
}

}  // namespace rindler
