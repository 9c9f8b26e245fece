#pragma once
// Scenario files: a versioned JSON description of one experiment — protocol
// configuration, private-input mode, attack, trial count, and optional sweep
// lists. Bit-strings are hex, most-significant-bit first, with lengths
// validated against n.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqpc/analysis.hpp"
#include "sqpc/protocol.hpp"

namespace sqpc {

inline constexpr const char* kScenarioSchema = "sqpc-scenario/1";

struct LeakageRequest {
  std::size_t samples = 100;
  std::size_t probe_dim = 2;
};

struct Scenario {
  ProtocolConfig config;               // config.seed holds the file's seed (or 0)
  std::optional<std::uint64_t> seed;   // present only when the file sets one
  InputsSpec inputs;                   // defaults to independent random inputs
  std::uint64_t trials = 1;
  std::vector<AttackStrategy> sweep;   // extra attacks for the sweep command
  std::optional<LeakageRequest> entangle_measure_sweep;
  std::optional<std::string> format;   // json | csv | md
  std::optional<std::string> out;      // output path
  bool transcript = false;

  void validate() const;  // throws std::invalid_argument
};

// Parses scenario JSON text. Unknown keys, bad enum strings, malformed hex
// and inconsistent lengths all throw std::invalid_argument with a one-line
// message naming the offending field.
Scenario parse_scenario(const std::string& json_text);

// Reads and parses a scenario file; throws std::invalid_argument on I/O
// failure too.
Scenario load_scenario(const std::string& path);

}  // namespace sqpc
