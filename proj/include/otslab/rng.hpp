#pragma once

#include <cstdint>

namespace otslab {

/// Counter-based generator (SplitMix64). Every consumer derives its stream
/// from a single seed plus integer labels, so parallel evaluation order
/// never changes the draws.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/// Stable mix of a seed with a stream label (e.g. sample index, sweep cell).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
    SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL * (label + 1)));
    return g.next_u64();
}

} // namespace otslab
