#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace skg {

/// Deterministic random stream. Every consumer derives its own stream from
/// a master seed plus a list of indices (cell, trial, purpose tag, ...), so
/// results do not depend on scheduling or worker count.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix(seed)) {}

    static RngStream derive(std::uint64_t master_seed,
                            std::initializer_list<std::uint64_t> indices) {
        std::uint64_t s = mix(master_seed);
        for (std::uint64_t idx : indices) {
            s = mix(s + 0x9E3779B97F4A7C15ULL * (idx + 1));
        }
        return RngStream(s);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double uniform_pos() { return 1.0 - uniform(); }

    /// Uniform integer in [0, bound); rejection sampling, unbiased.
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    /// Standard normal via Box-Muller (consumes exactly two uniforms).
    double normal() {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        return r * std::cos(2.0 * M_PI * uniform());
    }

    /// Circularly symmetric complex Gaussian CN(0, sigma2): independent
    /// real/imag parts with variance sigma2/2 each. One Box-Muller pair
    /// yields both components.
    std::complex<double> complex_gaussian(double sigma2) {
        const double r = std::sqrt(-std::log(uniform_pos()) * sigma2);
        const double phi = 2.0 * M_PI * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    double exponential(double mean) { return -mean * std::log(uniform_pos()); }

    std::uint64_t raw() { return engine_(); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace skg
