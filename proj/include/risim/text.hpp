#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace risim {

/// Deterministic shortest-ish decimal rendering (printf %.10g): identical
/// output for identical doubles on every run, wide enough that round-tripped
/// values stay within test tolerances.
inline std::string format_double(double v) {
    v += 0.0;  // collapse -0 to 0 so no column ever reads "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// Power ratio in dB; zero (or negative) power maps to -infinity, which
/// format_double renders as "-inf".
inline double to_db(double power) {
    if (!(power > 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(power);
}

}  // namespace risim
