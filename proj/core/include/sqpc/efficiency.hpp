#pragma once
// Qubit-efficiency accounting: eta = b / (q + c) where b counts compared
// private bits, q consumed qubits and c classical bits, all linear in n, so
// eta is an n-independent exact rational. Eight protocols are tabulated for
// comparison; the last row is the protocol implemented by this library.

#include <cstdint>
#include <string>
#include <vector>

#include "sqpc/rational.hpp"

namespace sqpc {

// A resource count of the form coeff * n.
struct LinearInN {
  std::int64_t coeff = 0;

  std::string str() const {  // "68n", "n", "0"
    if (coeff == 0) return "0";
    if (coeff == 1) return "n";
    return std::to_string(coeff) + "n";
  }
};

struct EfficiencyRecord {
  std::string protocol;  // row label
  std::string feature;   // headline technique
  std::string bell_types;  // "Single" | "Four"
  bool uses_sqkd_or_sqka = false;
  bool uses_entanglement_swapping = false;
  bool uses_unitary_operations = false;
  bool uses_delay_lines = false;
  bool tp_knows_result = true;
  LinearInN b, q, c;

  // n cancels: b·n / ((q+c)·n).
  Rational eta() const { return Rational(b.coeff, q.coeff + c.coeff); }
};

// The eight comparison rows, resource accounting included.
std::vector<EfficiencyRecord> efficiency_table();

// One table row per protocol; columns are the attribute labels (Feature,
// Types of Bell states, ..., Qubit efficiency).
std::string render_efficiency_markdown(const std::vector<EfficiencyRecord>& rows);
// Flat machine-readable form with the b/q/c accounting and exact rationals.
std::string render_efficiency_csv(const std::vector<EfficiencyRecord>& rows);

}  // namespace sqpc
