#include "sqpc/bitstring.hpp"

#include <stdexcept>

#include "sqpc/rng.hpp"

namespace sqpc {

namespace {

int hex_digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument(std::string("BitString: invalid hex digit '") + c + "'");
}

}  // namespace

BitString::BitString(std::initializer_list<int> bits) {
  for (int b : bits) push_back(b);
}

BitString BitString::random(std::size_t n, RandomStream& rng) {
  BitString s(n);
  for (std::size_t i = 0; i < n; ++i) s.bits_[i] = static_cast<std::uint8_t>(rng.bit());
  return s;
}

BitString BitString::from_hex(const std::string& hex, std::size_t n) {
  const std::size_t want_digits = (n + 3) / 4;
  if (hex.size() != want_digits)
    throw std::invalid_argument("BitString: expected " + std::to_string(want_digits) +
                                " hex digits for " + std::to_string(n) + " bits, got " +
                                std::to_string(hex.size()));
  BitString s(n);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int v = hex_digit_value(hex[d]);
    for (int b = 0; b < 4; ++b) {
      const std::size_t pos = d * 4 + static_cast<std::size_t>(b);
      const int bit = (v >> (3 - b)) & 1;
      if (pos < n) {
        s.bits_[pos] = static_cast<std::uint8_t>(bit);
      } else if (bit != 0) {
        throw std::invalid_argument("BitString: nonzero padding bits in '" + hex + "'");
      }
    }
  }
  return s;
}

int BitString::at(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("BitString::at: index out of range");
  return bits_[i];
}

void BitString::set(std::size_t i, int bit) {
  if (i >= bits_.size()) throw std::out_of_range("BitString::set: index out of range");
  if (bit != 0 && bit != 1) throw std::invalid_argument("BitString::set: bit must be 0 or 1");
  bits_[i] = static_cast<std::uint8_t>(bit);
}

void BitString::push_back(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("BitString::push_back: bit must be 0 or 1");
  bits_.push_back(static_cast<std::uint8_t>(bit));
}

BitString BitString::operator^(const BitString& other) const {
  if (bits_.size() != other.bits_.size())
    throw std::invalid_argument("BitString: XOR of mismatched lengths");
  BitString out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] ^ other.bits_[i];
  return out;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve((bits_.size() + 3) / 4);
  for (std::size_t d = 0; d * 4 < bits_.size(); ++d) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t pos = d * 4 + static_cast<std::size_t>(b);
      v = (v << 1) | (pos < bits_.size() ? bits_[pos] : 0);
    }
    out.push_back(digits[v]);
  }
  return out;
}

std::string BitString::to_bits() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace sqpc
