// SPDX-License-Identifier: Apache-2.0
// Seedable, splittable random number generation (xoshiro256++ streams
// derived via SplitMix64). All samplers are written out explicitly so a
// given (seed, stream) pair produces the same values on every platform.
#pragma once

#include <cmath>
#include <cstdint>

#include "polarcraft/common.hpp"

namespace polarcraft {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    // Independent stream for Monte Carlo shard `index` under `master_seed`.
    static Rng stream(uint64_t master_seed, uint64_t index) {
        uint64_t sm = master_seed;
        uint64_t mixed = splitmix64(sm) ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
        return Rng(mixed);
    }

    uint64_t next_u64() {
        // xoshiro256++
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe under log().
    double uniform01_open() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    uint8_t bernoulli_bit() { return static_cast<uint8_t>(next_u64() >> 63); }

    // Standard normal via Box-Muller (one sample per call; the sine half
    // is discarded to keep the stream position independent of call parity).
    double normal() {
        double u1 = uniform01_open();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double exponential() { return -std::log(uniform01_open()); }

    // Rayleigh amplitude with E[a^2] = 1.
    double rayleigh_unit_power() { return std::sqrt(exponential()); }

    // Gamma(shape, scale=1), shape >= 1 (Marsaglia-Tsang).
    double gamma(double shape) {
        require(shape >= 1.0, "gamma sampler requires shape >= 1");
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform01_open();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Student-t with nu > 2 degrees of freedom (unnormalized variance nu/(nu-2)).
    double student_t(double nu) {
        double z = normal();
        double chi2 = 2.0 * gamma(nu / 2.0);
        return z / std::sqrt(chi2 / nu);
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t state_[4];
};

}  // namespace polarcraft
