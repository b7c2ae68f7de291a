// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>

#include "multiphase/numerics/special.hpp"
#include "multiphase/phase_kernel/params.hpp"
#include "multiphase/phase_kernel/three_phase.hpp"

namespace multiphase {

/// Scaled fluxes of the three-phase kernel through its interfaces:
/// upper = sigma1^2/2 du/dx at q1, lower = sigma3^2/2 du/dx at q2.
struct InterfaceFlux {
    double upper = 0.0;
    double lower = 0.0;
};

/// Closed-form interface fluxes as series over slab paths. A path of length
/// D with weight w contributes w D phi(D / (sigma2 sqrt t)) to
///   upper = -T1 / (2 sigma2 t^(3/2)) * sum,   T1 = 2 sigma1 / (sigma1 + sigma2)
///   lower = +T3 / (2 sigma2 t^(3/2)) * sum,   T3 = 2 sigma3 / (sigma2 + sigma3).
inline InterfaceFlux three_phase_interface_flux(const ThreePhaseParams& p, double t, const SeriesControl& ctl = {}) {
    p.validate();
    detail::require_time(t);
    const detail::SlabCoefficients c(p);
    const double s2 = p.sigma2 * std::sqrt(t);
    const double pre = 1.0 / (2.0 * p.sigma2 * t * std::sqrt(t));

    auto paths = [&](double near, double r_near, double r_far) {
        return detail::sum_shells(ctl, [&](int k) {
            const double D0 = near + 2.0 * k * c.L;
            double v = std::pow(r_near * r_far, k) * D0 * std_normal_pdf(D0 / s2);
            if (k >= 1) {
                const double D1 = 2.0 * k * c.L - near;
                v += detail::away_weight(r_near, r_far, k) * D1 * std_normal_pdf(D1 / s2);
            }
            return v;
        });
    };
    return {-c.T1 * pre * paths(p.q1, c.R1, c.R3), c.T3 * pre * paths(-p.q2, c.R3, c.R1)};
}

/// Finite-difference oracle for the fluxes: fourth-order one-sided
/// differences of the closed-form density taken from outside the slab
/// (x >= q1 for the upper flux, x <= q2 for the lower one).
inline InterfaceFlux three_phase_flux_finite_difference(const ThreePhaseParams& p, double t, double h = 1e-4) {
    auto d_out = [&](int phase, double edge, double dir) {
        auto u = [&](int k) { return three_phase_phase_density(p, phase, edge + dir * k * h, t); };
        return dir * (-25.0 * u(0) + 48.0 * u(1) - 36.0 * u(2) + 16.0 * u(3) - 3.0 * u(4)) / (12.0 * h);
    };
    return {0.5 * p.sigma1 * p.sigma1 * d_out(1, p.q1, 1.0), 0.5 * p.sigma3 * p.sigma3 * d_out(3, p.q2, -1.0)};
}

}  // namespace multiphase
