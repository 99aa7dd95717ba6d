#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fbcs {

// Deterministic random source. All randomness in the library flows through
// this class so that equal seeds give bit-identical draws on every run.
// Draw rules are fixed:
//   uniform01 : one mt19937_64 output, top 53 bits, value in [0, 1)
//   normal    : Box-Muller from two uniform01 draws (no caching)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    double normal() {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace fbcs
