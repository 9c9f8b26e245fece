#include "sqpc/report.hpp"

#include <sstream>

#include "json.hpp"

namespace sqpc {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "sqpc-report/1";

ordered_json attack_json(const AttackStrategy& a) {
  ordered_json j;
  j["id"] = a.id();
  j["kind"] = to_string(a.kind);
  if (a.kind == AttackKind::None) return j;
  j["attacker"] = a.attacker == Attacker::Eve ? "eve" : "dishonest-bob";
  if (a.kind != AttackKind::DishonestTPSource) j["scope"] = to_string(a.scope);
  if (a.kind == AttackKind::InterceptResend) j["fake_bits"] = a.fake_bits;
  if (a.kind == AttackKind::EntangleMeasure) {
    j["probe_dim"] = a.probe_dim;
    j["e_matrix"] = a.e_matrix.empty() ? "identity" : "custom";
    j["f_matrix"] = a.f_matrix.empty() ? "identity" : "custom";
  }
  return j;
}

ordered_json config_json(const ProtocolConfig& c) {
  ordered_json j;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["choice_mode"] = to_string(c.choice_mode);
  j["default_threshold"] = c.default_threshold;
  ordered_json th = ordered_json::object();
  for (const auto& [cat, v] : c.thresholds) th[to_string(cat)] = v;
  j["thresholds"] = th;
  j["channel_flip_probability"] = c.channel_flip_probability;
  j["tp2_enabled"] = c.tp2_enabled;
  j["tp_forges_verdict"] = c.tp_forges_verdict;
  j["attack"] = attack_json(c.attack);
  return j;
}

// Bit positions are 1-based in every report.
ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["kind"] = to_string(v.kind);
  if (v.first_difference)
    j["first_difference"] = *v.first_difference + 1;
  else
    j["first_difference"] = nullptr;
  if (v.abort)
    j["abort"] = v.abort->to_string();
  else
    j["abort"] = nullptr;
  return j;
}

ordered_json checks_json(const std::map<CheckCategory, CheckStat>& checks) {
  ordered_json j = ordered_json::object();
  for (CheckCategory cat : kAllCheckCategories) {
    const auto it = checks.find(cat);
    if (it == checks.end()) continue;
    ordered_json row;
    row["errors"] = it->second.errors;
    row["samples"] = it->second.samples;
    row["rate"] = it->second.rate();
    j[to_string(cat)] = row;
  }
  return j;
}

ordered_json detection_json(const DetectionStats& d) {
  ordered_json j;
  j["attack"] = d.attack_id;
  j["exposures"] = d.trials;
  j["detected"] = d.detected;
  j["rate"] = d.rate;
  j["wilson95_low"] = d.wilson_interval_95.first;
  j["wilson95_high"] = d.wilson_interval_95.second;
  j["analytic"] = d.analytic ? ordered_json(d.analytic->str()) : ordered_json(nullptr);
  j["runs"] = d.runs;
  j["aborted_runs"] = d.aborted_runs;
  j["abort_rate"] = d.abort_rate;
  j["abort_estimate"] = d.abort_estimate ? ordered_json(*d.abort_estimate)
                                         : ordered_json(nullptr);
  return j;
}

ordered_json counters_json(const DetectionCounters& d) {
  ordered_json j;
  j["exposures"] = d.exposures;
  j["detected"] = d.detected;
  j["rate"] = d.exposures == 0 ? 0.0 : static_cast<double>(d.detected) / d.exposures;
  return j;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

ordered_json transcript_json(const Transcript& t) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : t) {
    ordered_json j;
    j["type"] = e.type;
    if (!e.seq.empty()) j["seq"] = e.seq;
    if (!e.party.empty()) j["party"] = e.party;
    if (!e.basis.empty()) j["basis"] = e.basis;
    if (!e.positions.empty()) j["positions"] = one_based(e.positions);
    if (!e.bits.empty()) j["bits"] = e.bits;
    if (!e.detail.empty()) j["detail"] = e.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

// What each role legitimately holds by the end of a completed run. The
// comparands and the parties' pre-shared key never appear in TP's column.
ordered_json knowledge_json(bool tp2_enabled) {
  ordered_json j;
  j["alice"] = {"m_a", "k_ab", "s1", "s5", "r_a", "announced-verdict"};
  j["bob"] = {"m_b", "k_ab", "s3", "s6", "r_b", "announced-verdict"};
  j["tp"] = {"s2", "s4", "r_a", "r_b", "r_t", "check-data", "verdict"};
  if (tp2_enabled) j["tp2"] = {"k_t", "r_a", "r_b", "r_tp", "verdict"};
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string trojan_horse_note() {
  return "Travelling qubits are assumed to pass a wavelength filter and a photon-number "
         "splitter at each receiver, screening out delay-photon and invisible-photon "
         "probes; these optical countermeasures sit below the qubit abstraction and are "
         "not simulated.";
}

std::string render_session_json(const SessionResult& r, bool include_transcript) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "session";
  j["index_convention"] = "1-based";
  j["config"] = config_json(r.config);
  j["verdict"] = verdict_json(r.verdict);
  j["announced"] = verdict_json(r.announced);
  j["ground_truth_equal"] = r.ground_truth_equal;
  ordered_json seq;
  seq["t1_pairs"] = r.t1_count;
  seq["t3_pairs"] = r.t3_count;
  seq["t5t6_pairs"] = r.t56_count;
  j["sequences"] = seq;
  j["check_error_rates"] = checks_json(r.checks);
  j["detection"] = counters_json(r.detection);
  j["knowledge"] = knowledge_json(r.config.tp2_enabled);
  ordered_json tp_view;
  tp_view["s2"] = r.s2.to_hex();
  tp_view["s4"] = r.s4.to_hex();
  tp_view["r_a"] = r.r_a.to_hex();
  tp_view["r_b"] = r.r_b.to_hex();
  tp_view["r_t"] = r.r_t.to_hex();
  tp_view["verdict"] = to_string(r.announced.kind);
  j["tp_view"] = tp_view;
  if (r.tp2) {
    ordered_json t2;
    t2["r_tp"] = r.tp2->r_tp.to_hex();
    t2["verdict"] = verdict_json(r.tp2->verdict);
    t2["consistent_with_announcement"] = r.tp2->consistent_with_announcement;
    j["tp2"] = t2;
  } else {
    j["tp2"] = nullptr;
  }
  ordered_json notes;
  notes["trojan_horse"] = trojan_horse_note();
  j["annotations"] = notes;
  if (include_transcript) j["transcript"] = transcript_json(r.transcript);
  return dump(j);
}

std::string render_aggregate_json(const MonteCarloSummary& s) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "aggregate";
  j["config"] = config_json(s.config);
  j["trials"] = s.trials;
  ordered_json v;
  v["equal"] = s.equal;
  v["not_equal"] = s.not_equal;
  v["aborted"] = s.aborted;
  v["correct"] = s.correct_verdicts;
  v["tp2_consistent"] = s.tp2_consistent;
  j["verdicts"] = v;
  j["check_error_rates"] = checks_json(s.checks);
  j["detection"] = detection_json(s.detection);
  return dump(j);
}

std::string render_sweep_json(const std::vector<DetectionStats>& rows) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "sweep";
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back(detection_json(r));
  j["attacks"] = arr;
  return dump(j);
}

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

}  // namespace

std::string render_sweep_csv(const std::vector<DetectionStats>& rows) {
  std::ostringstream out;
  out << "attack,exposures,detected,rate,wilson95_low,wilson95_high,analytic,runs,"
         "aborted_runs,abort_rate,abort_estimate\n";
  for (const auto& r : rows) {
    out << r.attack_id << ',' << r.trials << ',' << r.detected << ',' << fmt(r.rate) << ','
        << fmt(r.wilson_interval_95.first) << ',' << fmt(r.wilson_interval_95.second) << ','
        << (r.analytic ? r.analytic->str() : "") << ',' << r.runs << ',' << r.aborted_runs << ','
        << fmt(r.abort_rate) << ',' << (r.abort_estimate ? fmt(*r.abort_estimate) : "") << '\n';
  }
  return out.str();
}

std::string render_sweep_markdown(const std::vector<DetectionStats>& rows) {
  std::ostringstream out;
  out << "| Attack | Exposures | Detected | Rate | Wilson 95% | Analytic | Abort rate |\n";
  out << "| --- | --- | --- | --- | --- | --- | --- |\n";
  for (const auto& r : rows) {
    out << "| " << r.attack_id << " | " << r.trials << " | " << r.detected << " | "
        << fmt(r.rate) << " | [" << fmt(r.wilson_interval_95.first) << ", "
        << fmt(r.wilson_interval_95.second) << "] | "
        << (r.analytic ? r.analytic->str() : "-") << " | " << fmt(r.abort_rate) << " |\n";
  }
  return out.str();
}

namespace {

ordered_json leakage_row_json(const LeakageAggregate& r) {
  ordered_json j;
  j["regime"] = r.regime;
  j["context"] = r.context;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["zero_error_samples"] = r.zero_error_samples;
  j["max_distance_zero_error"] = r.max_distance_zero_error;
  j["min_induced_error_leaky"] = r.min_induced_error_leaky
                                     ? ordered_json(*r.min_induced_error_leaky)
                                     : ordered_json(nullptr);
  return j;
}

}  // namespace

std::string render_leakage_json(const std::vector<LeakageAggregate>& rows) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "leakage";
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back(leakage_row_json(r));
  j["cells"] = arr;
  return dump(j);
}

std::string render_leakage_csv(const std::vector<LeakageAggregate>& rows) {
  std::ostringstream out;
  out << "regime,context,samples,violations,zero_error_samples,max_distance_zero_error,"
         "min_induced_error_leaky\n";
  for (const auto& r : rows) {
    out << r.regime << ',' << r.context << ',' << r.samples << ',' << r.violations << ','
        << r.zero_error_samples << ',' << fmt(r.max_distance_zero_error) << ','
        << (r.min_induced_error_leaky ? fmt(*r.min_induced_error_leaky) : "") << '\n';
  }
  return out.str();
}

std::string render_leakage_markdown(const std::vector<LeakageAggregate>& rows) {
  std::ostringstream out;
  out << "| Regime | Context | Samples | Violations | Zero-error samples | "
         "Max distance (zero error) | Min error (leaky) |\n";
  out << "| --- | --- | --- | --- | --- | --- | --- |\n";
  for (const auto& r : rows) {
    out << "| " << r.regime << " | " << r.context << " | " << r.samples << " | " << r.violations
        << " | " << r.zero_error_samples << " | " << fmt(r.max_distance_zero_error) << " | "
        << (r.min_induced_error_leaky ? fmt(*r.min_induced_error_leaky) : "-") << " |\n";
  }
  return out.str();
}

}  // namespace sqpc
