// csreach: deterministic random number generator.
//
// All randomized components (graph generator, Grail labeling shuffles, query
// sampling) draw from this splitmix64-based generator rather than
// std::uniform_int_distribution, whose output is implementation-defined.
// Identical seeds therefore produce bit-identical artifacts on any platform.
#pragma once

#include <cstdint>
#include <vector>

namespace csreach {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // splitmix64 step (Steele, Lea, Flood; public domain reference sequence).
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound; // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform draw in the inclusive range [lo, hi].
    std::uint64_t next_range(std::uint64_t lo, std::uint64_t hi) {
        return lo + next_below(hi - lo + 1);
    }

    // Chance in [0,1] with 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bool(double probability) { return next_unit() < probability; }

    // Fisher-Yates shuffle with draws from this generator.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace csreach
