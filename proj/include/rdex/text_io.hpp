#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace rdex {

/// Shortest decimal form that round-trips a double exactly.
inline std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    // Prefer the shorter form when it already round-trips.
    char probe[40];
    std::snprintf(probe, sizeof probe, "%.15g", value);
    if (std::strtod(probe, nullptr) == value) {
        return probe;
    }
    std::snprintf(probe, sizeof probe, "%.16g", value);
    if (std::strtod(probe, nullptr) == value) {
        return probe;
    }
    return buf;
}

}  // namespace rdex
