#include "sqpc/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sqpc/adversary.hpp"

namespace sqpc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("scenario: " + msg);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail("unknown key '" + it.key() + "' in " + where);
  }
}

const json& require(const json& j, const char* key, const char* where) {
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key '") + key + "' in " + where);
  return *it;
}

std::uint64_t get_uint(const json& v, const char* what) {
  if (!v.is_number_unsigned()) fail(std::string(what) + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

double get_unit_real(const json& v, const char* what) {
  if (!v.is_number()) fail(std::string(what) + " must be a number");
  const double x = v.get<double>();
  if (x < 0.0 || x > 1.0) fail(std::string(what) + " must lie in [0, 1]");
  return x;
}

std::string get_string(const json& v, const char* what) {
  if (!v.is_string()) fail(std::string(what) + " must be a string");
  return v.get<std::string>();
}

bool get_bool(const json& v, const char* what) {
  if (!v.is_boolean()) fail(std::string(what) + " must be a boolean");
  return v.get<bool>();
}

Complex parse_complex(const json& v, const char* where) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex(v[0].get<double>(), v[1].get<double>());
  fail(std::string("entries of ") + where + " must be numbers or [re, im] pairs");
}

std::vector<Complex> parse_matrix(const json& v, std::size_t probe_dim, const char* key) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "identity") return {};
    if (s == "cnot") return em_cnot_data_to_probe(probe_dim);
    fail(std::string("attack.") + key + " string form must be 'identity' or 'cnot'");
  }
  const std::size_t dim = 2 * probe_dim;
  if (!v.is_array() || v.size() != dim)
    fail(std::string("attack.") + key + " must be a " + std::to_string(dim) + "x" +
         std::to_string(dim) + " matrix (rows as arrays)");
  std::vector<Complex> m(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = v[r];
    if (!row.is_array() || row.size() != dim)
      fail(std::string("attack.") + key + " row " + std::to_string(r) + " must have " +
           std::to_string(dim) + " entries");
    for (std::size_t c = 0; c < dim; ++c) m[r * dim + c] = parse_complex(row[c], key);
  }
  return m;
}

AttackKind parse_attack_kind(const std::string& s) {
  for (AttackKind k : {AttackKind::None, AttackKind::InterceptResend, AttackKind::MeasureResend,
                       AttackKind::EntangleMeasure, AttackKind::DishonestTPSource})
    if (s == to_string(k)) return k;
  fail("unknown attack kind '" + s + "'");
}

AttackScope parse_attack_scope(const std::string& s) {
  for (AttackScope v : {AttackScope::T1Leg, AttackScope::T3Leg, AttackScope::T5T6Leg})
    if (s == to_string(v)) return v;
  fail("unknown attack scope '" + s + "'");
}

AttackStrategy parse_attack(const json& j) {
  if (!j.is_object()) fail("attack must be an object");
  check_keys(j, {"kind", "scope", "attacker", "fake_bits", "probe_dim", "e", "f", "source"},
             "attack");
  AttackStrategy a;
  a.kind = parse_attack_kind(get_string(require(j, "kind", "attack"), "attack.kind"));
  if (auto it = j.find("scope"); it != j.end())
    a.scope = parse_attack_scope(get_string(*it, "attack.scope"));
  if (auto it = j.find("attacker"); it != j.end()) {
    const std::string s = get_string(*it, "attack.attacker");
    if (s == "eve")
      a.attacker = Attacker::Eve;
    else if (s == "dishonest-bob")
      a.attacker = Attacker::DishonestBob;
    else
      fail("unknown attacker '" + s + "'");
  }
  if (auto it = j.find("fake_bits"); it != j.end()) {
    if (!it->is_array()) fail("attack.fake_bits must be an array of bits");
    for (const auto& b : *it) {
      if (!b.is_number_unsigned() || b.get<std::uint64_t>() > 1)
        fail("attack.fake_bits entries must be 0 or 1");
      a.fake_bits.push_back(static_cast<int>(b.get<std::uint64_t>()));
    }
  }
  if (auto it = j.find("probe_dim"); it != j.end())
    a.probe_dim = static_cast<std::size_t>(get_uint(*it, "attack.probe_dim"));
  if (auto it = j.find("e"); it != j.end()) a.e_matrix = parse_matrix(*it, a.probe_dim, "e");
  if (auto it = j.find("f"); it != j.end()) a.f_matrix = parse_matrix(*it, a.probe_dim, "f");
  if (auto it = j.find("source"); it != j.end()) {
    if (!it->is_array() || it->size() != 4)
      fail("attack.source must list the four two-qubit amplitudes");
    for (const auto& v : *it) a.source_state.push_back(parse_complex(v, "source"));
  }
  try {
    a.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return a;
}

InputsSpec parse_inputs(const json& j, std::size_t n, bool tp2_enabled) {
  if (!j.is_object()) fail("inputs must be an object");
  check_keys(j, {"mode", "m_a", "m_b", "k_ab", "k_t"}, "inputs");
  const std::string mode = get_string(require(j, "mode", "inputs"), "inputs.mode");
  InputsSpec spec;
  if (mode == "random") {
    spec.mode = InputsSpec::Mode::Random;
  } else if (mode == "random-equal") {
    spec.mode = InputsSpec::Mode::RandomEqual;
  } else if (mode == "random-unequal") {
    spec.mode = InputsSpec::Mode::RandomUnequal;
  } else if (mode == "explicit") {
    spec.mode = InputsSpec::Mode::Explicit;
  } else {
    fail("unknown inputs mode '" + mode + "'");
  }
  if (spec.mode != InputsSpec::Mode::Explicit) {
    for (const char* k : {"m_a", "m_b", "k_ab", "k_t"})
      if (j.contains(k)) fail(std::string("inputs.") + k + " requires mode 'explicit'");
    return spec;
  }
  PrivateInputs in;
  auto bits = [&](const char* key) {
    const std::string hex = get_string(require(j, key, "inputs"), key);
    try {
      return BitString::from_hex(hex, n);
    } catch (const std::invalid_argument& e) {
      fail(std::string("inputs.") + key + ": " + e.what());
    }
  };
  in.m_a = bits("m_a");
  in.m_b = bits("m_b");
  in.k_ab = bits("k_ab");
  if (j.contains("k_t"))
    in.k_t = bits("k_t");
  else if (tp2_enabled)
    fail("inputs.k_t is required when tp2 is enabled");
  spec.fixed = std::move(in);
  return spec;
}

}  // namespace

void Scenario::validate() const {
  if (trials == 0) fail("trials must be at least 1");
  try {
    config.validate();
    if (inputs.mode == InputsSpec::Mode::Explicit) {
      if (!inputs.fixed) fail("explicit inputs mode without inputs");
      inputs.fixed->validate(config);
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (format && *format != "json" && *format != "csv" && *format != "md")
    fail("format must be one of json, csv, md");
  if (entangle_measure_sweep) {
    if (entangle_measure_sweep->samples == 0)
      fail("entangle_measure_sweep.samples must be at least 1");
    if (entangle_measure_sweep->probe_dim != 2 && entangle_measure_sweep->probe_dim != 4)
      fail("entangle_measure_sweep.probe_dim must be 2 or 4");
  }
}

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  check_keys(j,
             {"schema", "n", "seed", "choice_mode", "error_threshold",
              "channel_flip_probability", "tp2", "tp_forges_verdict", "trials", "inputs",
              "attack", "sweep", "entangle_measure_sweep", "format", "out", "transcript"},
             "scenario");
  const std::string schema = get_string(require(j, "schema", "scenario"), "schema");
  if (schema != kScenarioSchema)
    fail("unsupported schema '" + schema + "' (expected " + kScenarioSchema + ")");

  Scenario s;
  s.config.n = static_cast<std::size_t>(get_uint(require(j, "n", "scenario"), "n"));
  if (s.config.n == 0) fail("n must be at least 1");
  if (auto it = j.find("seed"); it != j.end()) {
    s.seed = get_uint(*it, "seed");
    s.config.seed = *s.seed;
  }
  if (auto it = j.find("choice_mode"); it != j.end()) {
    const std::string mode = get_string(*it, "choice_mode");
    if (mode == "balanced")
      s.config.choice_mode = ChoiceMode::Balanced;
    else if (mode == "iid")
      s.config.choice_mode = ChoiceMode::IID;
    else
      fail("unknown choice_mode '" + mode + "'");
  }
  if (auto it = j.find("error_threshold"); it != j.end()) {
    if (it->is_object()) {
      for (auto f = it->begin(); f != it->end(); ++f) {
        const double v = get_unit_real(f.value(), "error_threshold");
        if (f.key() == "default") {
          s.config.default_threshold = v;
        } else {
          try {
            s.config.thresholds[check_category_from_string(f.key())] = v;
          } catch (const std::invalid_argument&) {
            fail("unknown check category '" + f.key() + "' in error_threshold");
          }
        }
      }
    } else {
      s.config.default_threshold = get_unit_real(*it, "error_threshold");
    }
  }
  if (auto it = j.find("channel_flip_probability"); it != j.end())
    s.config.channel_flip_probability = get_unit_real(*it, "channel_flip_probability");
  if (auto it = j.find("tp2"); it != j.end()) s.config.tp2_enabled = get_bool(*it, "tp2");
  if (auto it = j.find("tp_forges_verdict"); it != j.end())
    s.config.tp_forges_verdict = get_bool(*it, "tp_forges_verdict");
  if (auto it = j.find("trials"); it != j.end()) s.trials = get_uint(*it, "trials");
  if (auto it = j.find("attack"); it != j.end()) s.config.attack = parse_attack(*it);
  if (auto it = j.find("inputs"); it != j.end())
    s.inputs = parse_inputs(*it, s.config.n, s.config.tp2_enabled);
  if (auto it = j.find("sweep"); it != j.end()) {
    if (!it->is_array()) fail("sweep must be an array of attack objects");
    for (const auto& a : *it) s.sweep.push_back(parse_attack(a));
  }
  if (auto it = j.find("entangle_measure_sweep"); it != j.end()) {
    if (!it->is_object()) fail("entangle_measure_sweep must be an object");
    check_keys(*it, {"samples", "probe_dim"}, "entangle_measure_sweep");
    LeakageRequest req;
    if (auto f = it->find("samples"); f != it->end())
      req.samples = static_cast<std::size_t>(get_uint(*f, "entangle_measure_sweep.samples"));
    if (auto f = it->find("probe_dim"); f != it->end())
      req.probe_dim = static_cast<std::size_t>(get_uint(*f, "entangle_measure_sweep.probe_dim"));
    s.entangle_measure_sweep = req;
  }
  if (auto it = j.find("format"); it != j.end()) s.format = get_string(*it, "format");
  if (auto it = j.find("out"); it != j.end()) s.out = get_string(*it, "out");
  if (auto it = j.find("transcript"); it != j.end())
    s.transcript = get_bool(*it, "transcript");

  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace sqpc
