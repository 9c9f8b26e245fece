#pragma once
// The comparison protocol. One session: TP prepares 16n Bell pairs, Alice and
// Bob each measure-or-reflect their travelling particles, TP runs the
// eavesdropping checks, the unchecked measured positions become sift strings,
// and the XOR-masked responses let TP announce equal/not-equal without
// learning either input.
//
// Pair layout: the first 4n pairs travel to Alice (first qubit out, second
// retained), the next 4n to Bob, and for the last 8n pairs both qubits travel
// (first to Alice, second to Bob).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqpc/adversary.hpp"
#include "sqpc/bitstring.hpp"
#include "sqpc/checks.hpp"
#include "sqpc/rng.hpp"
#include "sqpc/statevector.hpp"
#include "sqpc/transcript.hpp"

namespace sqpc {

enum class Action { Measure, Reflect };
// Balanced: a random permutation with exactly half measure, half reflect.
// IID: an independent fair coin per position (can abort for lack of measured
// positions).
enum class ChoiceMode { Balanced, IID };

const char* to_string(Action a);
const char* to_string(ChoiceMode m);

struct ProtocolConfig {
  std::size_t n = 1;
  std::uint64_t seed = 0;
  ChoiceMode choice_mode = ChoiceMode::Balanced;
  // Per-category tolerated error rate; abort when rate > threshold. Missing
  // categories default to default_threshold.
  double default_threshold = 0.0;
  std::map<CheckCategory, double> thresholds;
  // Optional bit-flip channel applied independently on every leg traversal.
  double channel_flip_probability = 0.0;
  bool tp2_enabled = false;
  // TP announces the negated verdict while otherwise following the protocol;
  // only the second verifier can expose this.
  bool tp_forges_verdict = false;
  AttackStrategy attack;

  double threshold(CheckCategory c) const;
  void validate() const;  // throws std::invalid_argument
};

struct PrivateInputs {
  BitString m_a, m_b;  // the two private inputs, length n
  BitString k_ab;      // key pre-shared by Alice and Bob, length n
  std::optional<BitString> k_t;  // key shared by TP and the second verifier

  static PrivateInputs random_inputs(std::size_t n, RandomStream& rng, bool with_k_t);
  void validate(const ProtocolConfig& config) const;
};

// Stand-in for the key agreement the parties run out of band: n uniform bits
// from the caller's stream.
BitString key_oracle(std::size_t n, RandomStream& rng);

enum class VerdictKind { Equal, NotEqual, Aborted };

const char* to_string(VerdictKind k);

struct AbortReason {
  enum class Kind { Security, InsufficientPositions, InsufficientComparisonPositions };
  Kind kind = Kind::Security;
  std::optional<CheckCategory> category;  // Security aborts name the failing check
  std::string detail;                     // e.g. which sequence ran short

  std::string to_string() const;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Aborted;
  // NotEqual: first position (0-based) where the inputs differ.
  std::optional<std::size_t> first_difference;
  std::optional<AbortReason> abort;
};

// Attack-detection bookkeeping (statistics only — never feeds back into
// protocol decisions). One exposure per attacked particle (first phase) or
// attacked pair (second phase); `detected` counts exposures whose check
// predicate would flag an error, whether or not the position landed in the
// announced check subset.
struct DetectionCounters {
  std::uint64_t exposures = 0;
  std::uint64_t detected = 0;

  void add(bool detected_now) {
    ++exposures;
    if (detected_now) ++detected;
  }
  void merge(const DetectionCounters& o) {
    exposures += o.exposures;
    detected += o.detected;
  }
};

struct Tp2Outcome {
  BitString r_tp;   // masked key material TP hands to the second verifier
  Verdict verdict;  // the second verifier's independent verdict
  bool consistent_with_announcement = true;
};

struct SessionResult {
  ProtocolConfig config;
  Verdict verdict;    // what the protocol computed (Aborted if checks failed)
  Verdict announced;  // what TP announced (differs only under forgery)
  std::map<CheckCategory, CheckStat> checks;
  BitString s1, s2, s3, s4, s5, s6;
  BitString r_a, r_b, r_t;
  std::optional<Tp2Outcome> tp2;
  DetectionCounters detection;
  Transcript transcript;
  bool ground_truth_equal = false;  // m_a == m_b, for harness scoring only
  std::size_t t1_count = 0, t3_count = 0, t56_count = 0;
};

// --- pieces exposed for direct testing ---------------------------------------

// Operation choices for `count` positions.
std::vector<Action> choose_actions(std::size_t count, ChoiceMode mode, RandomStream& rng);

// One party's handling of a travelling qubit inside a joint register:
// Measure Z-measures it and returns the recorded bit (the collapsed qubit is
// exactly the fresh |bit> resend, so the same index keeps travelling);
// Reflect leaves the register untouched and returns nothing.
std::optional<int> classical_party_step(StateVector& reg, std::size_t travel, Action choice,
                                        RandomStream& rng);

// r = m ^ k_ab ^ s_first ^ s_second (per-position XOR).
BitString response_bits(const BitString& m, const BitString& k_ab, const BitString& s_first,
                        const BitString& s_second);

// r_t^j = r_a^j ^ r_b^j ^ s2^j ^ s4^j; equal at j iff r_t^j = 1. Returns the
// verdict (first 0 decides NotEqual) and r_t itself.
std::pair<Verdict, BitString> tp_verdict(const BitString& r_a, const BitString& r_b,
                                         const BitString& s2, const BitString& s4);

// Second-verifier supplement: TP sends r_tp = k_t ^ s2 ^ s4; the verifier
// recomputes the verdict from announcements alone.
BitString tp2_masked_key(const BitString& k_t, const BitString& s2, const BitString& s4);
std::pair<Verdict, BitString> tp2_verdict(const BitString& r_a, const BitString& r_b,
                                          const BitString& r_tp, const BitString& k_t);

// Runs a full session.
SessionResult run_session(const ProtocolConfig& config, const PrivateInputs& inputs);

}  // namespace sqpc
