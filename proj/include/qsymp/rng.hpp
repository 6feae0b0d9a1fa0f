#pragma once

#include <cstdint>

namespace qsymp {

/// SplitMix64 (Steele, Lea, Flood; the java.util.SplittableRandom finalizer).
/// Deterministic across platforms; every verification report records the seed
/// it was run with. Trial k of a suite seeded with s uses stream(s, k).
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi] (inclusive), hi >= lo.
    int64_t range(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int64_t>(next() % span);
    }

    bool coin() { return next() & 1; }

    /// Independent per-trial stream derived from (seed, index).
    static SplitMix64 stream(uint64_t seed, uint64_t index) {
        SplitMix64 mixer(seed ^ (0xA0761D6478BD642Full * (index + 1)));
        return SplitMix64(mixer.next());
    }

  private:
    uint64_t state_;
};

}  // namespace qsymp
