#include <stdexcept>
#include <string>

#include "doctest.h"
#include "sqpc/analysis.hpp"
#include "sqpc/scenario.hpp"

using namespace sqpc;

namespace {

void expect_reject(const std::string& text) {
  CHECK_THROWS_AS(parse_scenario(text), std::invalid_argument);
}

}  // namespace

TEST_CASE("a minimal scenario gets the documented defaults") {
  const Scenario s = parse_scenario(R"({"schema": "sqpc-scenario/1", "n": 4})");
  CHECK(s.config.n == 4);
  CHECK(s.config.seed == 0);
  CHECK(!s.seed.has_value());
  CHECK(s.config.choice_mode == ChoiceMode::Balanced);
  CHECK(s.config.default_threshold == doctest::Approx(0.0));
  CHECK(s.config.thresholds.empty());
  CHECK(s.config.channel_flip_probability == doctest::Approx(0.0));
  CHECK(!s.config.tp2_enabled);
  CHECK(!s.config.tp_forges_verdict);
  CHECK(s.config.attack.kind == AttackKind::None);
  CHECK(s.trials == 1);
  CHECK(s.inputs.mode == InputsSpec::Mode::Random);
  CHECK(s.sweep.empty());
  CHECK(!s.entangle_measure_sweep.has_value());
  CHECK(!s.format.has_value());
  CHECK(!s.out.has_value());
  CHECK(!s.transcript);
}

TEST_CASE("a fully specified scenario round-trips every field") {
  const Scenario s = parse_scenario(R"({
    "schema": "sqpc-scenario/1",
    "n": 8,
    "seed": 12345,
    "choice_mode": "iid",
    "error_threshold": {"default": 0.05, "t1-measure": 0.125},
    "channel_flip_probability": 0.01,
    "tp2": true,
    "tp_forges_verdict": true,
    "trials": 50,
    "inputs": {"mode": "random-unequal"},
    "attack": {"kind": "measure-resend", "scope": "t5t6"},
    "sweep": [
      {"kind": "intercept-resend", "scope": "t1", "fake_bits": [0]},
      {"kind": "intercept-resend", "scope": "t5t6", "fake_bits": [0, 1]},
      {"kind": "entangle-measure", "scope": "t1", "probe_dim": 2, "e": "cnot", "f": "identity"}
    ],
    "entangle_measure_sweep": {"samples": 25, "probe_dim": 4},
    "format": "md",
    "out": "report.md",
    "transcript": true
  })");
  CHECK(s.config.n == 8);
  CHECK(s.seed == 12345);
  CHECK(s.config.seed == 12345);
  CHECK(s.config.choice_mode == ChoiceMode::IID);
  CHECK(s.config.default_threshold == doctest::Approx(0.05));
  CHECK(s.config.thresholds.at(CheckCategory::T1Measure) == doctest::Approx(0.125));
  CHECK(s.config.threshold(CheckCategory::T1Measure) == doctest::Approx(0.125));
  CHECK(s.config.threshold(CheckCategory::Case1) == doctest::Approx(0.05));
  CHECK(s.config.channel_flip_probability == doctest::Approx(0.01));
  CHECK(s.config.tp2_enabled);
  CHECK(s.config.tp_forges_verdict);
  CHECK(s.trials == 50);
  CHECK(s.inputs.mode == InputsSpec::Mode::RandomUnequal);
  CHECK(s.config.attack.kind == AttackKind::MeasureResend);
  CHECK(s.config.attack.scope == AttackScope::T5T6Leg);
  REQUIRE(s.sweep.size() == 3);
  CHECK(s.sweep[0].fake_bits == std::vector<int>{0});
  CHECK(s.sweep[1].fake_bits == std::vector<int>{0, 1});
  CHECK(s.sweep[2].e_matrix == em_cnot_data_to_probe(2));
  CHECK(s.sweep[2].f_matrix.empty());
  REQUIRE(s.entangle_measure_sweep.has_value());
  CHECK(s.entangle_measure_sweep->samples == 25);
  CHECK(s.entangle_measure_sweep->probe_dim == 4);
  CHECK(s.format == "md");
  CHECK(s.out == "report.md");
  CHECK(s.transcript);
}

TEST_CASE("scalar error_threshold sets the default for every category") {
  const Scenario s =
      parse_scenario(R"({"schema": "sqpc-scenario/1", "n": 2, "error_threshold": 0.2})");
  CHECK(s.config.default_threshold == doctest::Approx(0.2));
  for (CheckCategory c : kAllCheckCategories)
    CHECK(s.config.threshold(c) == doctest::Approx(0.2));
}

TEST_CASE("explicit inputs parse hex, most significant bit first") {
  const Scenario s = parse_scenario(R"({
    "schema": "sqpc-scenario/1",
    "n": 8,
    "inputs": {"mode": "explicit", "m_a": "a5", "m_b": "a5", "k_ab": "0f"}
  })");
  REQUIRE(s.inputs.mode == InputsSpec::Mode::Explicit);
  REQUIRE(s.inputs.fixed.has_value());
  CHECK(s.inputs.fixed->m_a.to_bits() == "10100101");
  CHECK(s.inputs.fixed->k_ab.to_bits() == "00001111");
  // The Monte-Carlo input derivation hands them back verbatim on any trial.
  const PrivateInputs in = trial_inputs(s.config, s.inputs, 3);
  CHECK(in.m_a == s.inputs.fixed->m_a);
  CHECK(in.m_b == s.inputs.fixed->m_b);

  // Dangling padding bits in the last digit are rejected: n=3 uses only the
  // top three bits of one digit.
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 3,
                    "inputs": {"mode": "explicit", "m_a": "f", "m_b": "e", "k_ab": "e"}})");
  CHECK_NOTHROW(parse_scenario(R"({"schema": "sqpc-scenario/1", "n": 3,
    "inputs": {"mode": "explicit", "m_a": "e", "m_b": "a", "k_ab": "0"}})"));
}

TEST_CASE("structural violations are rejected with context") {
  expect_reject("not json at all");
  expect_reject(R"([1, 2, 3])");
  expect_reject(R"({"n": 4})");                                   // missing schema
  expect_reject(R"({"schema": "sqpc-scenario/2", "n": 4})");      // wrong schema
  expect_reject(R"({"schema": "sqpc-scenario/1"})");              // missing n
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 0})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "bogus": 1})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "trials": 0})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "format": "xml"})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "error_threshold": 1.5})");
  expect_reject(
      R"({"schema": "sqpc-scenario/1", "n": 4, "error_threshold": {"t9-checks": 0.1}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "choice_mode": "sometimes"})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "seed": -1})");
}

TEST_CASE("input-section violations are rejected") {
  // Explicit-only keys in a random mode.
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "inputs": {"mode": "random", "m_a": "0"}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "inputs": {"mode": "surprise"}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "inputs": {}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "inputs": {"mode": "explicit", "m_a": "zz", "m_b": "00", "k_ab": "00"}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "inputs": {"mode": "explicit", "m_a": "000", "m_b": "0", "k_ab": "0"}})");
  // k_t is mandatory once the second verifier is on.
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "tp2": true,
                    "inputs": {"mode": "explicit", "m_a": "0", "m_b": "0", "k_ab": "0"}})");
  CHECK_NOTHROW(parse_scenario(R"({"schema": "sqpc-scenario/1", "n": 4, "tp2": true,
    "inputs": {"mode": "explicit", "m_a": "0", "m_b": "0", "k_ab": "0", "k_t": "f"}})"));
}

TEST_CASE("attack-section violations are rejected") {
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4, "attack": {"kind": "teleport"}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "measure-resend", "scope": "t7"}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "measure-resend", "attacker": "mallory"}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "intercept-resend", "scope": "t1", "fake_bits": [2]}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "intercept-resend", "scope": "t5t6", "fake_bits": [0]}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "entangle-measure", "probe_dim": 3}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "entangle-measure", "e": "hadamard"}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "entangle-measure", "e": [[1, 0], [0, 1]]}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "dishonest-tp-source", "source": [1, 1, 0, 0]}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "attack": {"kind": "measure-resend", "shoe_size": 46}})");

  // A well-formed source state parses, including [re, im] amplitude pairs.
  const Scenario s = parse_scenario(R"({
    "schema": "sqpc-scenario/1", "n": 4,
    "attack": {"kind": "dishonest-tp-source",
               "source": [0.7071067811865476, 0, 0, [0, 0.7071067811865476]]}
  })");
  CHECK(s.config.attack.source_state[3] == Complex(0.0, 0.7071067811865476));
}

TEST_CASE("entangle-measure sweep requests are validated") {
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "entangle_measure_sweep": {"samples": 0}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "entangle_measure_sweep": {"probe_dim": 3}})");
  expect_reject(R"({"schema": "sqpc-scenario/1", "n": 4,
                    "entangle_measure_sweep": {"swagger": 9}})");
  const Scenario s = parse_scenario(R"({"schema": "sqpc-scenario/1", "n": 4,
                                        "entangle_measure_sweep": {}})");
  REQUIRE(s.entangle_measure_sweep.has_value());
  CHECK(s.entangle_measure_sweep->samples == 100);
  CHECK(s.entangle_measure_sweep->probe_dim == 2);
}

TEST_CASE("load_scenario reports unreadable paths") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/dir/missing.json"), std::invalid_argument);
}
