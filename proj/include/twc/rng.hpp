#pragma once

#include <cstdint>

namespace twc {

/// splitmix64: the single documented PRNG behind every seeded corpus. All
/// randomness in the tool flows from one user-supplied 64-bit seed through
/// this generator, so corpora are reproducible across runs and platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// uniform in [0, n); n > 0
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// uniform in [lo, hi] inclusive
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

}  // namespace twc
