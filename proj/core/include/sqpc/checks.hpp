#pragma once
// Security-check vocabulary shared by the protocol driver, the adversary
// evaluators and the analysis harness.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sqpc {

// Where an error can surface. T1/T3 checks belong to the first round trips
// (Alice's and Bob's halves of the first 8n pairs); the four cases classify
// the last 8n pairs by the parties' announced (Alice, Bob) operations:
//   Case1 = (reflect, reflect)   Case2 = (measure, reflect)
//   Case3 = (reflect, measure)   Case4 = (measure, measure)
enum class CheckCategory {
  T1Reflect,
  T1Measure,
  T3Reflect,
  T3Measure,
  Case1,
  Case2,
  Case3,
  Case4,
};

inline constexpr std::array<CheckCategory, 8> kAllCheckCategories = {
    CheckCategory::T1Reflect, CheckCategory::T1Measure, CheckCategory::T3Reflect,
    CheckCategory::T3Measure, CheckCategory::Case1,     CheckCategory::Case2,
    CheckCategory::Case3,     CheckCategory::Case4,
};

inline const char* to_string(CheckCategory c) {
  switch (c) {
    case CheckCategory::T1Reflect: return "t1-reflect";
    case CheckCategory::T1Measure: return "t1-measure";
    case CheckCategory::T3Reflect: return "t3-reflect";
    case CheckCategory::T3Measure: return "t3-measure";
    case CheckCategory::Case1: return "case-1";
    case CheckCategory::Case2: return "case-2";
    case CheckCategory::Case3: return "case-3";
    case CheckCategory::Case4: return "case-4";
  }
  throw std::logic_error("unknown CheckCategory");
}

CheckCategory check_category_from_string(const std::string& name);

struct CheckStat {
  std::uint64_t errors = 0;
  std::uint64_t samples = 0;

  double rate() const { return samples == 0 ? 0.0 : static_cast<double>(errors) / samples; }
  void add(bool error) {
    ++samples;
    if (error) ++errors;
  }
  void merge(const CheckStat& other) {
    errors += other.errors;
    samples += other.samples;
  }
};

}  // namespace sqpc
