// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "multiphase/numerics/quadrature.hpp"
#include "multiphase/pde_oracle/solver.hpp"
#include "multiphase/phase_kernel/two_phase.hpp"

namespace multiphase {

struct ChapmanKolmogorovReport {
    double max_abs_error = 0.0;
    double x_at_max = 0.0;
    std::size_t points = 0;
};

/// Convolution u(x, t; q) = int u(y, s; q) u(x - y, t - s; q - y) dy, where
/// the inner kernel sees the interface shifted to q - y. Evaluated by
/// adaptive quadrature (split at y = q and y = x) at each x; returns the
/// largest deviation from the closed form at time t.
inline ChapmanKolmogorovReport chapman_kolmogorov_check(const TwoPhaseParams& p, double s, double t,
                                                        std::span<const double> xs,
                                                        QuadratureSpec spec = {1e-13, 1e-12, 4000}) {
    p.validate();
    if (!(s > 0.0 && s < t)) throw DomainError("chapman_kolmogorov_check: need 0 < s < t");
    ChapmanKolmogorovReport rep;
    const auto [lo, hi] = two_phase_support(p, s, 13.0);
    for (double x : xs) {
        auto integrand = [&](double y) {
            const double outer = two_phase_pdf(p, y, s);
            if (outer == 0.0) return 0.0;
            const TwoPhaseParams shifted{p.sigma1, p.sigma2, p.q - y};
            return outer * two_phase_pdf(shifted, x - y, t - s);
        };
        const double conv = integrate_piecewise(integrand, lo, hi, {p.q, x}, spec).value;
        const double err = std::abs(conv - two_phase_pdf(p, x, t));
        if (err > rep.max_abs_error) {
            rep.max_abs_error = err;
            rep.x_at_max = x;
        }
        ++rep.points;
    }
    return rep;
}

/// Same check on the cell centres of a solver grid.
inline ChapmanKolmogorovReport chapman_kolmogorov_check(const TwoPhaseParams& p, double s, double t,
                                                        const SolverGrid& grid,
                                                        QuadratureSpec spec = {1e-13, 1e-12, 4000}) {
    std::vector<double> xs(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i) xs[i] = grid.center(i);
    return chapman_kolmogorov_check(p, s, t, xs, spec);
}

}  // namespace multiphase
