#include "sqpc/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sqpc/rng.hpp"

namespace sqpc {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kUnitaryTolerance = 1e-10;
constexpr double kBranchEpsilon = 1e-14;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double norm_squared(const std::vector<Complex>& amps) {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

}  // namespace

const char* to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
  }
  throw std::logic_error("unknown BellKind");
}

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0) throw std::invalid_argument("StateVector: need at least one qubit");
  if (num_qubits > 24) throw std::invalid_argument("StateVector: register too large");
  amps_.assign(std::size_t{1} << num_qubits, Complex(0.0, 0.0));
  amps_[0] = Complex(1.0, 0.0);
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits == 0) throw std::invalid_argument("StateVector: need at least one qubit");
  if (amps_.size() != (std::size_t{1} << num_qubits))
    throw std::invalid_argument("StateVector: amplitude count must be 2^num_qubits");
  if (std::abs(norm_squared(amps_) - 1.0) > kNormTolerance)
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
}

double StateVector::norm_error() const { return std::abs(norm_squared(amps_) - 1.0); }

void StateVector::renormalize() {
  const double n = std::sqrt(norm_squared(amps_));
  if (n <= 0.0) throw std::domain_error("StateVector::renormalize: zero vector");
  for (auto& a : amps_) a /= n;
}

StateVector StateVector::tensor(const StateVector& other) const {
  std::vector<Complex> out(amps_.size() * other.amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i)
    for (std::size_t j = 0; j < other.amps_.size(); ++j)
      out[i * other.amps_.size() + j] = amps_[i] * other.amps_[j];
  StateVector result(num_qubits_ + other.num_qubits_, std::move(out));
  return result;
}

std::size_t StateVector::bit_mask(std::size_t qubit) const {
  if (qubit >= num_qubits_) throw std::out_of_range("StateVector: qubit index out of range");
  return std::size_t{1} << (num_qubits_ - 1 - qubit);
}

StateVector fresh_qubit(ZOutcome bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("fresh_qubit: bit must be 0 or 1");
  std::vector<Complex> amps(2, Complex(0.0, 0.0));
  amps[static_cast<std::size_t>(bit)] = Complex(1.0, 0.0);
  return StateVector(1, std::move(amps));
}

StateVector prepare_bell(BellKind kind) {
  std::vector<Complex> amps(4, Complex(0.0, 0.0));
  switch (kind) {
    case BellKind::PsiPlus:
      amps[1] = kInvSqrt2;
      amps[2] = kInvSqrt2;
      break;
    case BellKind::PsiMinus:
      amps[1] = kInvSqrt2;
      amps[2] = -kInvSqrt2;
      break;
    case BellKind::PhiPlus:
      amps[0] = kInvSqrt2;
      amps[3] = kInvSqrt2;
      break;
    case BellKind::PhiMinus:
      amps[0] = kInvSqrt2;
      amps[3] = -kInvSqrt2;
      break;
  }
  return StateVector(2, std::move(amps));
}

double prob_one(const StateVector& state, std::size_t qubit) {
  const std::size_t mask = state.bit_mask(qubit);
  double p = 0.0;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (i & mask) p += std::norm(amps[i]);
  return p;
}

double collapse_z(StateVector& state, std::size_t qubit, ZOutcome outcome) {
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("collapse_z: outcome must be 0 or 1");
  const std::size_t mask = state.bit_mask(qubit);
  auto amps = state.amplitudes();
  // Branch weight summed directly off the surviving amplitudes: deriving the
  // 0 branch as 1 - P(1) cancels to rounding noise when P(1) is close to 1,
  // and rescaling by that noise denormalizes the collapsed state.
  double p = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i)
    if (((i & mask) != 0) == (outcome == 1)) p += std::norm(amps[i]);
  if (p < kBranchEpsilon) throw std::domain_error("collapse_z: branch has ~zero probability");
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool is_one = (i & mask) != 0;
    if (is_one == (outcome == 1))
      amps[i] *= scale;
    else
      amps[i] = Complex(0.0, 0.0);
  }
  state = StateVector(state.num_qubits(), std::move(amps));
  return p;
}

ZOutcome measure_z(StateVector& state, std::size_t qubit, RandomStream& rng) {
  const double p1 = prob_one(state, qubit);
  ZOutcome outcome = rng.uniform() < p1 ? 1 : 0;
  // A draw in the rounding slack must not select a ~zero-probability branch.
  if (outcome == 1 && p1 < kBranchEpsilon) outcome = 0;
  if (outcome == 0 && 1.0 - p1 < kBranchEpsilon) outcome = 1;
  collapse_z(state, qubit, outcome);
  return outcome;
}

namespace {

// Bell components of the (a, b) subspace for fixed values of the remaining
// qubits. rest ranges over basis indices with both pair bits cleared.
struct BellDecomposition {
  std::size_t mask_a, mask_b;

  Complex component(const std::vector<Complex>& amps, std::size_t rest, BellKind kind) const {
    const Complex a00 = amps[rest];
    const Complex a01 = amps[rest | mask_b];
    const Complex a10 = amps[rest | mask_a];
    const Complex a11 = amps[rest | mask_a | mask_b];
    switch (kind) {
      case BellKind::PsiPlus: return (a01 + a10) * kInvSqrt2;
      case BellKind::PsiMinus: return (a01 - a10) * kInvSqrt2;
      case BellKind::PhiPlus: return (a00 + a11) * kInvSqrt2;
      case BellKind::PhiMinus: return (a00 - a11) * kInvSqrt2;
    }
    throw std::logic_error("unknown BellKind");
  }
};

}  // namespace

std::array<double, 4> bell_probabilities(const StateVector& state, std::size_t a, std::size_t b) {
  if (a == b) throw std::invalid_argument("bell_probabilities: need two distinct qubits");
  const BellDecomposition dec{state.bit_mask(a), state.bit_mask(b)};
  const auto& amps = state.amplitudes();
  std::array<double, 4> probs{0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & (dec.mask_a | dec.mask_b)) continue;
    for (std::size_t k = 0; k < 4; ++k)
      probs[k] += std::norm(dec.component(amps, i, kAllBellKinds[k]));
  }
  return probs;
}

double collapse_bell(StateVector& state, std::size_t a, std::size_t b, BellKind kind) {
  if (a == b) throw std::invalid_argument("collapse_bell: need two distinct qubits");
  const BellDecomposition dec{state.bit_mask(a), state.bit_mask(b)};
  auto amps = state.amplitudes();
  double p = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & (dec.mask_a | dec.mask_b)) continue;
    p += std::norm(dec.component(amps, i, kind));
  }
  if (p < kBranchEpsilon) throw std::domain_error("collapse_bell: branch has ~zero probability");
  const double scale = 1.0 / std::sqrt(p);
  std::vector<Complex> out(amps.size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & (dec.mask_a | dec.mask_b)) continue;
    const Complex c = dec.component(amps, i, kind) * scale;
    // c * |bell>: scatter the Bell state's own amplitudes back onto the
    // four (a, b) basis slots.
    switch (kind) {
      case BellKind::PsiPlus:
        out[i | dec.mask_b] = c * kInvSqrt2;
        out[i | dec.mask_a] = c * kInvSqrt2;
        break;
      case BellKind::PsiMinus:
        out[i | dec.mask_b] = c * kInvSqrt2;
        out[i | dec.mask_a] = -c * kInvSqrt2;
        break;
      case BellKind::PhiPlus:
        out[i] = c * kInvSqrt2;
        out[i | dec.mask_a | dec.mask_b] = c * kInvSqrt2;
        break;
      case BellKind::PhiMinus:
        out[i] = c * kInvSqrt2;
        out[i | dec.mask_a | dec.mask_b] = -c * kInvSqrt2;
        break;
    }
  }
  state = StateVector(state.num_qubits(), std::move(out));
  return p;
}

BellKind measure_bell(StateVector& state, std::size_t a, std::size_t b, RandomStream& rng) {
  const auto probs = bell_probabilities(state, a, b);
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t chosen = 4;
  for (std::size_t k = 0; k < 4; ++k) {
    acc += probs[k];
    if (u < acc) {
      chosen = k;
      break;
    }
  }
  if (chosen == 4) {  // u landed in the rounding slack; take the likeliest branch
    chosen = 0;
    for (std::size_t k = 1; k < 4; ++k)
      if (probs[k] > probs[chosen]) chosen = k;
  }
  collapse_bell(state, a, b, kAllBellKinds[chosen]);
  return kAllBellKinds[chosen];
}

void apply_unitary(StateVector& state, const std::vector<Complex>& matrix,
                   const std::vector<std::size_t>& targets) {
  const std::size_t k = targets.size();
  if (k == 0) throw std::invalid_argument("apply_unitary: need at least one target");
  const std::size_t d = std::size_t{1} << k;
  if (matrix.size() != d * d)
    throw std::invalid_argument("apply_unitary: matrix must be 2^k x 2^k for k targets");

  std::vector<std::size_t> masks(k);
  std::size_t target_mask = 0;
  for (std::size_t t = 0; t < k; ++t) {
    masks[t] = state.bit_mask(targets[t]);
    if (target_mask & masks[t]) throw std::invalid_argument("apply_unitary: duplicate target");
    target_mask |= masks[t];
  }

  // U†U = I within 1e-10.
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      Complex dot(0.0, 0.0);
      for (std::size_t i = 0; i < d; ++i) dot += std::conj(matrix[i * d + r]) * matrix[i * d + c];
      const Complex expect = r == c ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      if (std::abs(dot - expect) > kUnitaryTolerance)
        throw std::invalid_argument("apply_unitary: matrix is not unitary");
    }
  }

  // Local index j (targets[0] = most significant bit) -> global offset.
  std::vector<std::size_t> offsets(d, 0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t t = 0; t < k; ++t)
      if (j & (std::size_t{1} << (k - 1 - t))) offsets[j] |= masks[t];

  auto amps = state.amplitudes();
  std::vector<Complex> sub(d);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & target_mask) continue;
    for (std::size_t j = 0; j < d; ++j) sub[j] = amps[base | offsets[j]];
    for (std::size_t r = 0; r < d; ++r) {
      Complex acc(0.0, 0.0);
      for (std::size_t c = 0; c < d; ++c) acc += matrix[r * d + c] * sub[c];
      amps[base | offsets[r]] = acc;
    }
  }
  state = StateVector(state.num_qubits(), std::move(amps));
}

void apply_x(StateVector& state, std::size_t qubit) {
  const std::size_t mask = state.bit_mask(qubit);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    if ((i & mask) == 0) std::swap(amps[i], amps[i | mask]);
  state = StateVector(state.num_qubits(), std::move(amps));
}

}  // namespace sqpc
