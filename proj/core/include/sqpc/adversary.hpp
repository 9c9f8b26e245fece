#pragma once
// Channel attacks: intercept-resend with fake Z-basis particles,
// measure-resend in transit, entangle-measure with unitaries E (forward leg)
// and F (return leg) acting on (data qubit ⊗ probe), and a dishonest source
// at the preparation step. Plus the exact branch-enumeration evaluator for
// entangle-measure attacks.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqpc/checks.hpp"
#include "sqpc/density.hpp"
#include "sqpc/statevector.hpp"

namespace sqpc {

class RandomStream;

enum class AttackKind { None, InterceptResend, MeasureResend, EntangleMeasure, DishonestTPSource };
enum class AttackScope { T1Leg, T3Leg, T5T6Leg };
// A dishonest classical party mounts the same channel attacks as an outside
// eavesdropper on the other party's leg; the report then charges the recorded
// knowledge to that party instead of to Eve.
enum class Attacker { Eve, DishonestBob };

const char* to_string(AttackKind k);
const char* to_string(AttackScope s);

struct AttackStrategy {
  AttackKind kind = AttackKind::None;
  AttackScope scope = AttackScope::T1Leg;
  Attacker attacker = Attacker::Eve;

  // InterceptResend: one fake bit per intercepted particle — {b} for a
  // T1/T3 scope, {b5, b6} for the T5/T6 scope.
  std::vector<int> fake_bits;

  // EntangleMeasure: row-major unitaries of dimension 2*probe_dim on
  // (data ⊗ probe); the data qubit is the most significant factor. Identity
  // when empty. probe_dim must be 2 or 4 (one or two probe qubits).
  std::size_t probe_dim = 2;
  std::vector<Complex> e_matrix;
  std::vector<Complex> f_matrix;

  // DishonestTPSource: the 2-qubit state the source actually emits.
  std::vector<Complex> source_state;

  std::string id() const;    // stable label for reports, e.g. "intercept-resend(t1, fake=|0>)"
  void validate() const;     // throws std::invalid_argument
};

// --- channel-leg mechanics used by the protocol driver -----------------------

// Appends a fake |bit> qubit to the register and returns its index; the
// original travel qubit stays behind, held by the adversary.
std::size_t intercept_with_fake(StateVector& reg, int fake_bit);

// Z-measures the travel qubit in transit (measure-resend).
ZOutcome transit_measure(StateVector& reg, std::size_t travel, RandomStream& rng);

// Appends a |0...0> probe register of the given dimension; returns its qubit
// indices. probe_dim must be 2 or 4.
std::vector<std::size_t> append_probe(StateVector& reg, std::size_t probe_dim);

// Applies an entangle-measure leg unitary to (travel ⊗ probe). An empty
// matrix means identity.
void apply_leg_unitary(StateVector& reg, const std::vector<Complex>& matrix, std::size_t travel,
                       const std::vector<std::size_t>& probe);

// --- entangle-measure helpers -----------------------------------------------

std::vector<Complex> em_identity(std::size_t probe_dim);
// CNOT from the data qubit into the probe's first qubit.
std::vector<Complex> em_cnot_data_to_probe(std::size_t probe_dim);
// Haar-like random unitary: orthonormalized complex Gaussian matrix.
std::vector<Complex> random_unitary(std::size_t dim, RandomStream& rng);

// Which part of the protocol the evaluated attack sits on: a first-phase leg
// (one travelling particle with a retained partner) or the second-phase pair
// (both particles travel, one to each party).
enum class EmContext { T1, T5T6 };

struct EntangleMeasureEvaluation {
  // Conditional error probability of each check category reachable in the
  // context, given that the positions fall in that category.
  std::map<CheckCategory, double> induced_error;
  // Conditional probe states, one per (operations, outcomes) branch with
  // nonzero probability, labelled e.g. "M:a=0,t=0,p=1" or "RR:bell=psi+".
  std::vector<std::pair<std::string, DensityLikeProbe>> probe_states;
  double max_induced_error = 0.0;
  // Max pairwise trace distance between conditional probe states.
  double max_probe_distance = 0.0;
};

// Exact evaluation by enumerating party choices and measurement outcomes with
// their Born probabilities; no sampling.
EntangleMeasureEvaluation evaluate_entangle_measure(const AttackStrategy& attack,
                                                    EmContext context);

}  // namespace sqpc
