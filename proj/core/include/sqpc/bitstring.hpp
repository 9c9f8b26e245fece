#pragma once
// Fixed-length bit strings: private inputs, pre-shared keys, sift strings and
// response strings, one bit per comparison position. Files and reports encode
// them as hex, most-significant-bit first: bit 0 is the high bit of the first
// hex digit, and unused low bits of the final digit must be zero.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sqpc {

class RandomStream;

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : bits_(n, 0) {}
  BitString(std::initializer_list<int> bits);

  static BitString random(std::size_t n, RandomStream& rng);
  // Parses exactly ceil(n/4) hex digits; throws std::invalid_argument on bad
  // digits, wrong length, or nonzero padding bits.
  static BitString from_hex(const std::string& hex, std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int at(std::size_t i) const;
  void set(std::size_t i, int bit);
  void push_back(int bit);

  BitString operator^(const BitString& other) const;  // lengths must match
  bool operator==(const BitString& other) const = default;

  std::string to_hex() const;
  std::string to_bits() const;  // "0110…", debugging/tests

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace sqpc
