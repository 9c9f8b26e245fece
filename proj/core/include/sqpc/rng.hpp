#pragma once
// Deterministic random streams. Every sampling operation in the library takes
// an explicit RandomStream; there is no global generator. Child streams are a
// pure function of (parent seed, id) — not of the parent's consumption state —
// so per-trial streams make Monte-Carlo results independent of thread count.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sqpc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Child stream for trial/stream `id`, derived from the seed alone.
  RandomStream derive(std::uint64_t id) const {
    return RandomStream(splitmix64(seed_ ^ (0x9e3779b97f4a7c15ULL * (id + 1))));
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  int bit() { return static_cast<int>(engine_() & 1u); }

  // Uniform integer in [0, bound).
  std::uint64_t integer(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomStream::integer: bound must be positive");
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[integer(i)]);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace sqpc
