// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <vector>

#include "multiphase/numerics/quadrature.hpp"
#include "multiphase/phase_kernel/params.hpp"

namespace multiphase::detail {

/// Moments of `pdf` by quadrature over [-12, 12] in units of `scale`, split
/// at `breaks` (given in x units). Working in standardized units keeps every
/// integral O(1) so the absolute tolerance means the same thing at any scale.
template <class Pdf>
MomentSummary moments_by_quadrature(Pdf&& pdf, double scale, const std::vector<double>& breaks,
                                    const QuadratureSpec& spec) {
    std::vector<double> zb;
    for (double b : breaks) zb.push_back(b / scale);
    auto density = [&](double z) { return pdf(z * scale) * scale; };
    auto integrate = [&](auto&& g) { return integrate_piecewise(g, -12.0, 12.0, zb, spec).value; };

    const double mass = integrate(density);
    const double mean = integrate([&](double z) { return z * density(z); }) / mass;
    auto central = [&](int k) {
        return integrate([&](double z) { return std::pow(z - mean, k) * density(z); }) / mass;
    };
    const double m2 = central(2);
    const double m3 = central(3);
    const double m4 = central(4);
    MomentSummary out;
    out.mean = mean * scale;
    out.variance = m2 * scale * scale;
    out.skewness = m3 / std::pow(m2, 1.5);
    out.kurtosis = m4 / (m2 * m2);
    return out;
}

}  // namespace multiphase::detail
