#pragma once

#include <cmath>
#include <cstdint>

namespace rdex {

/// Deterministic 64-bit generator (xoshiro256++ seeded via splitmix64).
///
/// All distribution transforms are implemented here rather than taken from
/// <random>, so that a given seed produces the same stream on every platform
/// and toolchain. Every run owns exactly one stream; nothing is shared.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            word = splitmix64(x);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw in [0, 1) with 53 bits of precision.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Box-Muller transform; consumes two uniform draws per call.
    double gaussian(double mean, double sigma) {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * radius * std::cos(2.0 * pi() * u2);
    }

    /// Inverse-CDF Cauchy draw; one uniform per call.
    double cauchy(double center, double scale) {
        return center + scale * std::tan(pi() * (uniform01() - 0.5));
    }

    bool bernoulli(double p) { return uniform01() < p; }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr double pi() { return 3.141592653589793238462643383279502884; }

    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace rdex
