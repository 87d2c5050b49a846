#pragma once

#include <cstdint>
#include <initializer_list>

namespace lacstat {

// Counter-based generator: SplitMix64's finalizer applied to key + i*phi.
// Output i depends only on (key, i), so any (thread, order) schedule that
// assigns the same counters produces the same stream. Streams are split by
// folding a path of domain tags into the key.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static CounterRng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t k = mix(seed + 0x9e3779b97f4a7c15ULL);
        for (std::uint64_t tag : path) k = mix(k ^ (tag + 0x9e3779b97f4a7c15ULL));
        return CounterRng(k);
    }

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(key_ + counter * 0x9e3779b97f4a7c15ULL);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform01(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform01(counter);
    }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
        return bits(counter) % n;
    }

private:
    std::uint64_t key_;
};

}  // namespace lacstat
