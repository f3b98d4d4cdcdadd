#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace burau {

/// Seedable generator with a platform-independent bit stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Standard distributions are implementation-defined, so integer
/// and real draws are derived here by rejection sampling and 53-bit scaling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index bound must be positive");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    while (true) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % bound;
    }
  }

  /// Uniform real in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Seed for an independent child stream, derived with splitmix64.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace burau
