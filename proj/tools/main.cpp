// Command-line front end: run sessions or Monte-Carlo batches from a scenario
// file, sweep attacks into detection tables, and print the qubit-efficiency
// table. Exit codes: 0 = completed, 2 = security abort, 1 = usage or config
// error (single-line diagnostic on stderr).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sqpc/analysis.hpp"
#include "sqpc/efficiency.hpp"
#include "sqpc/report.hpp"
#include "sqpc/scenario.hpp"

namespace {

struct CommonFlags {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  unsigned parallel = 1;
  std::optional<std::string> format;
  std::optional<std::string> out;
  bool transcript = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_scenario) {
  auto* sc = cmd->add_option("--scenario", f.scenario_path, "Scenario JSON file");
  if (needs_scenario) sc->required();
  cmd->add_option("--seed", f.seed, "Master seed (overrides scenario and SQPC_SEED)");
  cmd->add_option("--trials", f.trials, "Number of sessions (overrides scenario)");
  cmd->add_option("--parallel", f.parallel, "Worker threads for Monte-Carlo batches")
      ->check(CLI::Range(1u, 1024u));
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  cmd->add_option("--out", f.out, "Write output to this file instead of stdout");
  cmd->add_flag("--transcript", f.transcript, "Include the event transcript in run reports");
}

std::uint64_t env_seed() {
  const char* env = std::getenv("SQPC_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw std::invalid_argument("SQPC_SEED must be an unsigned integer");
  return static_cast<std::uint64_t>(v);
}

// Seed precedence: --seed flag, then the scenario file, then SQPC_SEED, then 0.
void resolve(sqpc::Scenario& s, const CommonFlags& f) {
  if (f.seed)
    s.config.seed = *f.seed;
  else if (!s.seed)
    s.config.seed = env_seed();
  if (f.trials) s.trials = *f.trials;
  if (f.format) s.format = f.format;
  if (f.out) s.out = f.out;
  if (f.transcript) s.transcript = true;
  if (s.trials == 0) throw std::invalid_argument("trials must be at least 1");
}

void emit(const sqpc::Scenario& s, const std::string& text) {
  if (s.out) {
    std::ofstream file(*s.out);
    if (!file) throw std::invalid_argument("cannot write output file '" + *s.out + "'");
    file << text;
  } else {
    std::cout << text;
  }
}

int cmd_run(const CommonFlags& flags) {
  sqpc::Scenario s = sqpc::load_scenario(flags.scenario_path);
  resolve(s, flags);
  const std::string format = s.format.value_or("json");
  if (format != "json")
    throw std::invalid_argument("run emits json reports; use sweep/efficiency for csv or md");

  if (s.trials == 1) {
    const sqpc::SessionResult result = sqpc::run_session(
        sqpc::trial_config(s.config, 0), sqpc::trial_inputs(s.config, s.inputs, 0));
    emit(s, sqpc::render_session_json(result, s.transcript));
    if (result.verdict.kind == sqpc::VerdictKind::Aborted) return 2;
    return 0;
  }
  const sqpc::MonteCarloSummary summary =
      sqpc::monte_carlo(s.config, s.trials, flags.parallel, s.inputs);
  emit(s, sqpc::render_aggregate_json(summary));
  return summary.detection.aborted_runs > 0 ? 2 : 0;
}

int cmd_sweep(const CommonFlags& flags) {
  sqpc::Scenario s = sqpc::load_scenario(flags.scenario_path);
  resolve(s, flags);
  const std::string format = s.format.value_or("csv");

  std::vector<sqpc::AttackStrategy> attacks;
  if (s.config.attack.kind != sqpc::AttackKind::None) attacks.push_back(s.config.attack);
  for (const auto& a : s.sweep) attacks.push_back(a);

  std::vector<sqpc::DetectionStats> rows;
  for (const auto& attack : attacks) {
    sqpc::ProtocolConfig config = s.config;
    config.attack = attack;
    rows.push_back(sqpc::monte_carlo(config, s.trials, flags.parallel, s.inputs).detection);
  }
  std::vector<sqpc::LeakageAggregate> leakage;
  if (s.entangle_measure_sweep) {
    leakage = sqpc::leakage_sweep(s.entangle_measure_sweep->samples,
                                  s.entangle_measure_sweep->probe_dim, s.config.seed);
  }

  std::string text;
  if (format == "json") {
    text = sqpc::render_sweep_json(rows);
    if (!leakage.empty()) text += sqpc::render_leakage_json(leakage);
  } else if (format == "md") {
    text = sqpc::render_sweep_markdown(rows);
    if (!leakage.empty()) text += "\n" + sqpc::render_leakage_markdown(leakage);
  } else {
    text = sqpc::render_sweep_csv(rows);
    if (!leakage.empty()) text += "\n" + sqpc::render_leakage_csv(leakage);
  }
  emit(s, text);
  return 0;
}

int cmd_efficiency(const CommonFlags& flags) {
  const std::string format = flags.format.value_or("md");
  const auto rows = sqpc::efficiency_table();
  std::string text;
  if (format == "md") {
    text = sqpc::render_efficiency_markdown(rows);
  } else if (format == "csv") {
    text = sqpc::render_efficiency_csv(rows);
  } else {
    throw std::invalid_argument("efficiency renders md or csv");
  }
  if (flags.out) {
    std::ofstream file(*flags.out);
    if (!file) throw std::invalid_argument("cannot write output file '" + *flags.out + "'");
    file << text;
  } else {
    std::cout << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semiquantum private-comparison simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, eff_flags;
  CLI::App* run = app.add_subcommand("run", "Run sessions from a scenario file");
  add_common(run, run_flags, true);
  CLI::App* sweep = app.add_subcommand("sweep", "Detection statistics per attack");
  add_common(sweep, sweep_flags, true);
  CLI::App* eff = app.add_subcommand("efficiency", "Print the qubit-efficiency table");
  add_common(eff, eff_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags);
    return cmd_efficiency(eff_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
