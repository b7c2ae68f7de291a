// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <numbers>

namespace multiphase {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

/// Standard normal density.
inline double std_normal_pdf(double z) noexcept {
    return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

/// Standard normal CDF. Evaluated through the complementary error function
/// so both tails keep full relative accuracy.
inline double std_normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z * (1.0 / std::numbers::sqrt2));
}

/// Complementary error function, erfc(z) = 2 Phi(-z sqrt 2).
inline double erfc(double z) noexcept { return std::erfc(z); }

/// Density of N(mean, scale^2) at x.
inline double normal_pdf(double x, double mean, double scale) noexcept {
    return std_normal_pdf((x - mean) / scale) / scale;
}

}  // namespace multiphase
