#pragma once

#include <cstdint>
#include <random>

namespace leosim {

// Deterministic random source: mt19937_64 with doubles built from the top
// 53 bits, so sequences are bit-identical for a given seed on any platform.
// (std::uniform_real_distribution is implementation-defined and avoided.)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // uniform in [0, hi)
    double uniform(double hi) { return next_double() * hi; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        // modulo bias is irrelevant at our n << 2^64 scales
        return engine_() % n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace leosim
