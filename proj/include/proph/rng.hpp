#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace proph {

/// Deterministic stream of uniform variates. Replicated experiments derive
/// independent substreams from (seed, replication index), so results do not
/// depend on evaluation order or thread scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(mix(mix(seed) + kGamma)) {}

  static RngStream substream(std::uint64_t seed, std::uint64_t index) {
    return RngStream(mix(seed) ^ mix(index * kGamma + kGamma));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform index in {0, ..., bound-1}; rejection keeps it exactly uniform.
  std::size_t next_index(std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % b;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % b);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += kGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace proph
