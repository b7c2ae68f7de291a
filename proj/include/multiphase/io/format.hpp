// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace multiphase::io {

/// Shortest-form decimal with `digits` significant digits (%g style).
inline std::string sig(double v, int digits = 12) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

/// Fixed-point with `decimals` places.
inline std::string fixed(double v, int decimals = 6) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

}  // namespace multiphase::io
