#pragma once
// Deterministic report rendering. All renderers are pure functions of their
// inputs — no timestamps, hostnames or run-environment echoes — so a fixed
// (config, seed) pair yields byte-identical output whatever the parallelism.
// JSON renderers emit a versioned "schema" field.

#include <string>
#include <vector>

#include "sqpc/analysis.hpp"
#include "sqpc/protocol.hpp"

namespace sqpc {

// Full single-session report: config echo, verdicts, per-category check
// rates, detection counters, per-party knowledge ledgers, the TP view, and
// hardware countermeasure annotations. Never contains m_a, m_b or k_ab.
std::string render_session_json(const SessionResult& result, bool include_transcript);

// Aggregate over a Monte-Carlo batch.
std::string render_aggregate_json(const MonteCarloSummary& summary);

// Detection-statistics tables, one row per attack.
std::string render_sweep_json(const std::vector<DetectionStats>& rows);
std::string render_sweep_csv(const std::vector<DetectionStats>& rows);
std::string render_sweep_markdown(const std::vector<DetectionStats>& rows);

// Entangle-measure leakage tables.
std::string render_leakage_json(const std::vector<LeakageAggregate>& rows);
std::string render_leakage_csv(const std::vector<LeakageAggregate>& rows);
std::string render_leakage_markdown(const std::vector<LeakageAggregate>& rows);

// Static note on the hardware countermeasures assumed against delay-photon
// and invisible-photon probing of the quantum channel.
std::string trojan_horse_note();

}  // namespace sqpc
