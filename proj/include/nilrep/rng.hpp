#pragma once

#include <cstdint>
#include <initializer_list>

namespace nilrep {

// SplitMix64. Deterministic and platform-independent, unlike the standard
// library distributions; seeded artifacts must be byte-identical across
// builds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0, by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    long long in_range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

// Derives a child seed from a master seed and an index path, so concurrent
// or reordered work items get schedule-independent streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    SplitMix64 mix(master ^ 0xd1b54a32d192ed03ULL);
    std::uint64_t h = mix.next();
    for (std::uint64_t p : path) {
        SplitMix64 step(h ^ (p + 0x9e3779b97f4a7c15ULL));
        h = step.next();
    }
    return h;
}

} // namespace nilrep
