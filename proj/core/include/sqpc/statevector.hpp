#pragma once
// Dense state vectors over a handful of qubits — a travelling particle, its
// retained partner, and at most two adversary probe registers ever share one
// register, so dimensions stay at or below 2^6.
//
// Qubit ordering: qubit 0 is the MOST significant bit of the basis index.
// For a 2-qubit register, amplitude 1 belongs to |01> (qubit 0 = 0,
// qubit 1 = 1) and amplitude 2 to |10>.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace sqpc {

class RandomStream;

using Complex = std::complex<double>;
using ZOutcome = int;  // 0 -> |0>, 1 -> |1>

// The four Bell states of an ordered qubit pair (a, b):
//   PsiPlus  = (|01> + |10>)/sqrt(2)    PsiMinus = (|01> - |10>)/sqrt(2)
//   PhiPlus  = (|00> + |11>)/sqrt(2)    PhiMinus = (|00> - |11>)/sqrt(2)
enum class BellKind { PsiPlus, PsiMinus, PhiPlus, PhiMinus };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {
    BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus, BellKind::PhiMinus};

const char* to_string(BellKind kind);

class StateVector {
 public:
  // |0...0> on num_qubits qubits.
  explicit StateVector(std::size_t num_qubits);
  // Explicit amplitudes; the size must equal 2^num_qubits and the norm must
  // be 1 within 1e-12 (throws std::invalid_argument otherwise).
  StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const Complex& amp(std::size_t basis_index) const { return amps_[basis_index]; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  // |sum of |amp|^2 - 1|
  double norm_error() const;
  void renormalize();

  // Appends other's qubits after this register's; they become the least
  // significant bits of the combined basis index.
  StateVector tensor(const StateVector& other) const;

  // Basis-index bit for `qubit` (most significant bit is qubit 0).
  std::size_t bit_mask(std::size_t qubit) const;

 private:
  std::size_t num_qubits_;
  std::vector<Complex> amps_;
};

StateVector fresh_qubit(ZOutcome bit);    // |0> or |1>
StateVector prepare_bell(BellKind kind);  // two-qubit Bell state

// Probability that a Z measurement of `qubit` yields 1.
double prob_one(const StateVector& state, std::size_t qubit);

// Projects `qubit` onto `outcome` and renormalizes; returns the branch
// probability. Throws std::domain_error if that probability is ~0.
double collapse_z(StateVector& state, std::size_t qubit, ZOutcome outcome);

// Born-rule sample + collapse. Mutates `state`.
ZOutcome measure_z(StateVector& state, std::size_t qubit, RandomStream& rng);

// Outcome distribution of a Bell measurement on the ordered pair (a, b),
// indexed by BellKind's enumerator order.
std::array<double, 4> bell_probabilities(const StateVector& state, std::size_t a, std::size_t b);

// Projects (a, b) onto the given Bell state and renormalizes; returns the
// branch probability. Throws std::domain_error if that probability is ~0.
double collapse_bell(StateVector& state, std::size_t a, std::size_t b, BellKind kind);

// Born-rule sample + collapse of a Bell measurement on (a, b).
BellKind measure_bell(StateVector& state, std::size_t a, std::size_t b, RandomStream& rng);

// Applies a unitary to the ordered target qubits; targets[0] addresses the
// most significant bit of the gate's local basis index. `matrix` is row-major
// with dimension 2^targets.size(); unitarity is validated to 1e-10 (throws
// std::invalid_argument).
void apply_unitary(StateVector& state, const std::vector<Complex>& matrix,
                   const std::vector<std::size_t>& targets);

// Pauli X on one qubit (the optional bit-flip channel).
void apply_x(StateVector& state, std::size_t qubit);

}  // namespace sqpc
