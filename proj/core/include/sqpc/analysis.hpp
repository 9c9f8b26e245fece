#pragma once
// Monte-Carlo harness, closed-form per-exposure detection probabilities for
// the cataloged attacks, and the entangle-measure leakage summaries.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqpc/adversary.hpp"
#include "sqpc/protocol.hpp"
#include "sqpc/rational.hpp"

namespace sqpc {

// 95% Wilson score interval for successes/trials; (0, 1) when trials == 0.
std::pair<double, double> wilson95(std::uint64_t successes, std::uint64_t trials);

struct DetectionStats {
  std::string attack_id;
  // Exposures: attacked particles (first phase) or attacked pairs (second
  // phase), pooled over all sessions.
  std::uint64_t trials = 0;
  std::uint64_t detected = 0;
  double rate = 0.0;
  std::pair<double, double> wilson_interval_95{0.0, 1.0};
  std::optional<Rational> analytic;  // set when the attack is in the catalog
  std::uint64_t runs = 0;            // sessions executed
  std::uint64_t aborted_runs = 0;    // sessions that ended in a security abort
  double abort_rate = 0.0;
  // 1 - (1 - p)^k: chance at least one exposure trips a check in a run with k
  // exposures at the analytic per-exposure rate p (checked-subset thinning
  // makes the realized abort rate lower; this bounds it from above).
  std::optional<double> abort_estimate;
};

struct MonteCarloSummary {
  ProtocolConfig config;
  std::uint64_t trials = 0;  // sessions
  std::uint64_t equal = 0, not_equal = 0, aborted = 0;
  // Completed verdicts that match m_a == m_b ground truth.
  std::uint64_t correct_verdicts = 0;
  std::uint64_t tp2_consistent = 0;  // sessions whose second verifier agreed
  std::map<CheckCategory, CheckStat> checks;  // pooled over sessions
  DetectionStats detection;
};

// How each trial's private inputs are drawn.
struct InputsSpec {
  enum class Mode {
    Random,         // m_a, m_b independent uniform
    RandomEqual,    // m_b := m_a
    RandomUnequal,  // m_b forced to differ in at least one position
    Explicit,       // the same fixed inputs every trial
  };
  Mode mode = Mode::Random;
  std::optional<PrivateInputs> fixed;  // required for Explicit

  static InputsSpec explicit_inputs(PrivateInputs in) {
    return {Mode::Explicit, std::move(in)};
  }
};

// The session config and inputs used for trial `trial`: both are derived
// from (config.seed, trial) alone. Exposed so a single reported session can
// reproduce exactly what a Monte-Carlo batch would run as that trial.
ProtocolConfig trial_config(const ProtocolConfig& config, std::uint64_t trial);
PrivateInputs trial_inputs(const ProtocolConfig& config, const InputsSpec& inputs,
                           std::uint64_t trial);

// Runs `trials` independent sessions. Trial i uses RNG streams derived from
// (config.seed, i) alone, so the summary is identical for every parallelism
// degree.
MonteCarloSummary monte_carlo(const ProtocolConfig& config, std::uint64_t trials,
                              unsigned parallelism = 1, const InputsSpec& inputs = {});

// Exact per-exposure detection probability, by enumerating party choices and
// Born-rule branches in rational arithmetic. Catalog: intercept-resend (any
// fake bits) and measure-resend, on either the first-phase legs or the pair
// leg. Throws std::invalid_argument for attacks outside the catalog.
Rational analytic_detection(const AttackStrategy& attack);

// Exposures per session for `attack`'s scope: 4n first-phase particles or 8n
// pairs.
std::uint64_t exposures_per_run(const AttackStrategy& attack, std::size_t n);

// --- entangle-measure leakage ------------------------------------------------

// A sample is a violation when it induces (numerically) zero error in every
// check branch yet leaves distinguishable probe states: error < 1e-9 on all
// branches while some probe pair has trace distance > 1e-6.
inline constexpr double kZeroErrorEps = 1e-9;
inline constexpr double kLeakageEps = 1e-6;

struct LeakageRow {
  std::string regime;   // which unitaries were sampled: e-and-f | e-only | f-only
  std::string context;  // t1 | t5t6
  double max_induced_error = 0.0;
  double max_probe_distance = 0.0;
  bool pass = true;  // false iff zero error with probe dependence
};

// Summarizes one evaluation against the zero-error ⟹ zero-leakage predicate.
LeakageRow leakage_report(const EntangleMeasureEvaluation& evaluation, std::string regime,
                          std::string context);

struct LeakageAggregate {
  std::string regime;
  std::string context;
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;         // failed rows
  std::uint64_t zero_error_samples = 0; // rows with every branch error < 1e-9
  double max_distance_zero_error = 0.0;
  // Smallest worst-branch error among samples whose probes were
  // distinguishable; absent when none were.
  std::optional<double> min_induced_error_leaky;

  void add(const LeakageRow& row, const EntangleMeasureEvaluation& evaluation);
};

// Samples Haar-like attack unitaries in three regimes (both E and F random,
// E random with F = identity, F random with E = identity) against both
// contexts, `samples_per_cell` each, and aggregates the leakage rows.
std::vector<LeakageAggregate> leakage_sweep(std::size_t samples_per_cell, std::size_t probe_dim,
                                            std::uint64_t seed);

}  // namespace sqpc
