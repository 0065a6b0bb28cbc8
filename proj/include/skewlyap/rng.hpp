#pragma once

// Counter-based randomness: every draw is a pure function of
// (seed, stream, counter), so parallel evaluation in any order reproduces
// serial results bit for bit.

#include <cstdint>

#include "frac128.hpp"

namespace skewlyap {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_rand(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
    return mix64(mix64(seed ^ 0x6a09e667f3bcc908ull) + mix64(stream) * 0x2545f4914f6cdd1dull +
                 counter);
}

// uniform in [0,1)
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return (double)(counter_rand(seed, stream, counter) >> 11) * 0x1p-53;
}

inline Frac128 counter_frac128(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    u128 hi = counter_rand(seed, stream, 2 * counter);
    u128 lo = counter_rand(seed, stream, 2 * counter + 1);
    return {(hi << 64) | lo};
}

// Small sequential generator for places where a stream is more natural
// than a counter (test harnesses, fuzz drivers).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() { return mix64(state++); }
    double uniform() { return (double)(next() >> 11) * 0x1p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

} // namespace skewlyap
