#pragma once

#include <cstdint>

namespace lamehardy {

// SplitMix64: tiny, portable, and bit-reproducible across platforms, which
// the byte-identical report contract needs (std distributions are not
// specified exactly).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi] inclusive.
    long long uniform_int(long long lo, long long hi) {
        return lo + (long long)(next_u64() % (std::uint64_t)(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

} // namespace lamehardy
