#pragma once

#include <cstdint>

namespace normbound {

// Splittable per-path generator: the stream for path `index` is seeded by a
// strong mix of (seed, index), so draws depend only on the key, never on
// which worker runs the path.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (index + 1))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // uniform in [0, 1)
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace normbound
