#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace strokeplan {

/// Deterministic generator with hash-based stream splitting. Each (seed,
/// stream, index) tuple yields an independent generator, so parallel loops
/// keyed by index reproduce the same draws regardless of scheduling.
/// Gaussian draws use an explicit Box-Muller transform instead of
/// std::normal_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(mix(seed)) {}

    static Rng split(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
        uint64_t s = mix(seed);
        s = mix(s ^ (a + 0x9e3779b97f4a7c15ULL));
        s = mix(s ^ (b + 0xbf58476d1ce4e5b9ULL));
        s = mix(s ^ (c + 0x94d049bb133111ebULL));
        return Rng(Raw{}, s);
    }

    uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    int uniform_int(int lo, int hi_inclusive) {
        return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi_inclusive - lo + 1));
    }

    /// Standard normal via Box-Muller; consumes two uniforms per draw.
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

private:
    struct Raw {};
    Rng(Raw, uint64_t state) : gen_(state) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

}  // namespace strokeplan
