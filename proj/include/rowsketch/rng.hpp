#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace rowsketch {

// Per-stream seed derivation (SplitMix64 output function). Every randomized
// operation in the library takes an explicit 64-bit seed; sub-streams (trials,
// retries, internal stages) are derived through this function so a single
// master seed pins down an entire experiment.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Seedable generator used everywhere randomness is needed. The stream is
// mt19937_64, whose output sequence is fixed by the C++ standard, so results
// are reproducible across platforms for a given seed. Floating-point variates
// are derived here directly from the integer stream instead of through
// std::*_distribution, whose sequences are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; generates in pairs.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    // Uniform integer in [0, bound), bound >= 1, without modulo bias.
    std::uint64_t next_index(std::uint64_t bound) {
        if ((bound & (bound - 1)) == 0) return gen_() & (bound - 1);
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t x = gen_();
        while (x >= limit) x = gen_();
        return x % bound;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace rowsketch
