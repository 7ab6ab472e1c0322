#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace tmgen {

// Stream salts so that independent pipeline stages draw from independent
// deterministic streams derived from one run seed.
enum class RngStream : std::uint64_t {
  shaping = 1,
  hot_nodes = 2,
  packing = 3,
  generic = 4,
};

// Deterministic random source. All transforms (uniform doubles, bounded
// ints) are implemented on top of the raw mt19937_64 output so that
// sequences are bit-identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }
  Rng(std::uint64_t seed, RngStream stream)
      : Rng(seed, static_cast<std::uint64_t>(stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Unbiased uniform integer in [0, n). n must be >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;  // multiple of n
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tmgen
