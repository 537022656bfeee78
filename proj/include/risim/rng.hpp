#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace risim {

// Sampling helpers built on raw std::mt19937_64 draws. The engine's output
// sequence is pinned by the C++ standard, but the library distribution
// adaptors are not; routing every draw through these keeps seeded results
// byte-identical across standard libraries.

/// Uniform double in [0, 1), 53-bit resolution, one raw draw.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

/// Standard normal via Box-Muller; consumes exactly two raw draws.
inline double normal(std::mt19937_64& rng, double stddev = 1.0) {
    const double u1 = uniform_unit(rng);
    const double u2 = uniform_unit(rng);
    // 1 - u1 lies in (0, 1], so the log is finite.
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    return stddev * radius * std::cos(2.0 * M_PI * u2);
}

/// Circularly-symmetric complex gaussian CN(0, variance); four raw draws.
inline std::complex<double> complex_normal(std::mt19937_64& rng, double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal(rng, s);
    const double im = normal(rng, s);
    return {re, im};
}

}  // namespace risim
