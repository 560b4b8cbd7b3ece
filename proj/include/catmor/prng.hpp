#pragma once

#include <cstdint>

namespace catmor {

/// splitmix64 with the standard published constants. Deterministic across
/// platforms; every randomized path in the library derives from this.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n must be positive.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  /// Uniform in [lo, hi] inclusive.
  int range(int lo, int hi) { return lo + below(hi - lo + 1); }

  /// Independent substream for (seed, index) pairs, one per trial.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 s(seed);
    std::uint64_t base = s.next();
    SplitMix64 t(base ^ (0xA3EC647659359ACDull * (index + 1)));
    return t;
  }
};

}  // namespace catmor
