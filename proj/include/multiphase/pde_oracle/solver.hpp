// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "multiphase/error.hpp"
#include "multiphase/numerics/special.hpp"
#include "multiphase/phase_kernel/params.hpp"
#include "multiphase/phase_kernel/system.hpp"

namespace multiphase {

/// Uniform cell-centred grid on [x_min, x_max] with nx cells. The solve
/// starts at t_warm from a smooth state and steps to t_end with step dt.
struct SolverGrid {
    double x_min = -5.0;
    double x_max = 5.0;
    std::size_t nx = 2001;
    double dt = 1e-4;
    double t_warm = 0.05;

    double dx() const { return (x_max - x_min) / static_cast<double>(nx); }
    double center(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }

    /// Halves dx and dt on the same domain; face alignment is preserved.
    SolverGrid refined() const { return {x_min, x_max, 2 * nx, 0.5 * dt, t_warm}; }

    /// Checks the grid is fit for solving `sys` up to t_end.
    void validate(const PhaseSystem& sys, double t_end) const {
        if (nx < 201) throw DomainError("SolverGrid: nx must be >= 201");
        if (!(dt > 0.0)) throw DomainError("SolverGrid: dt must be > 0");
        if (!(t_warm > 0.0)) throw DomainError("SolverGrid: t_warm must be > 0");
        if (!(t_end > t_warm)) throw DomainError("SolverGrid: t_end must exceed t_warm");
        const double reach = 8.0 * sys.max_sigma() * std::sqrt(t_end);
        const double lo = sys.boundaries().empty() ? 0.0 : std::min(0.0, sys.boundaries().back());
        const double hi = sys.boundaries().empty() ? 0.0 : std::max(0.0, sys.boundaries().front());
        if (!(x_min < lo - reach) || !(x_max > hi + reach)) {
            std::ostringstream msg;
            msg << "SolverGrid: domain [" << x_min << ", " << x_max << "] must cover ["
                << lo - reach << ", " << hi + reach << "]";
            throw DomainError(msg.str());
        }
    }
};

/// Builds a grid of about `nx` cells covering the far field
/// +-(8 sigma_max sqrt(t_end) + max|q|) with a 5% margin. For up to two
/// interfaces, dx and x_min are adjusted so every interface lies exactly on
/// a cell face; with more, the remaining interfaces are snapped.
inline SolverGrid make_solver_grid(const PhaseSystem& sys, double t_end, std::size_t nx = 2001, double dt = 1e-4,
                                   double t_warm = 0.05) {
    const double reach = 8.0 * sys.max_sigma() * std::sqrt(t_end) + sys.max_abs_boundary();
    const double half_width = 1.05 * reach;
    double dx = 2.0 * half_width / static_cast<double>(nx);
    const auto& b = sys.boundaries();
    if (b.size() >= 2) {
        const double gap = b.front() - b.back();
        dx = gap / std::max(1.0, std::round(gap / dx));
    }
    const double anchor = b.empty() ? 0.0 : b.front();
    // Keep the window centred on 0 while landing `anchor` on a face.
    const double faces_below = std::round((anchor + half_width) / dx);
    const double x_min = anchor - faces_below * dx;
    SolverGrid g{x_min, x_min + dx * static_cast<double>(nx), nx, dt, t_warm};
    // Rounding can shave the far edge; widen symmetrically if needed.
    while (g.x_max < half_width) {
        g.nx += 2;
        g.x_min -= dx;
        g.x_max += dx;
    }
    while (g.x_min > -half_width) {
        g.nx += 2;
        g.x_min -= dx;
        g.x_max += dx;
    }
    return g;
}

struct GridSolution {
    SolverGrid grid;
    double t = 0.0;
    std::vector<double> values;  // cell averages of u(x, t)
    double mass = 0.0;           // sum of cell averages times dx
    double max_mass_drift = 0.0;  // max |mass - 1| over all steps
    double dt_used = 0.0;
    std::size_t steps = 0;
    double max_snap_distance = 0.0;
    bool warm_start_exact = false;

    std::vector<double> centers() const {
        std::vector<double> out(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = grid.center(i);
        return out;
    }

    /// Piecewise-linear interpolation between cell centres; zero outside.
    double at(double x) const {
        const double pos = (x - grid.x_min) / grid.dx() - 0.5;
        if (pos < 0.0 || pos > static_cast<double>(values.size() - 1)) return 0.0;
        const auto i = static_cast<std::size_t>(std::floor(pos));
        if (i + 1 >= values.size()) return values.back();
        const double w = pos - static_cast<double>(i);
        return (1.0 - w) * values[i] + w * values[i + 1];
    }

    double min_value() const { return *std::min_element(values.begin(), values.end()); }
};

/// Crank-Nicolson finite-volume solve of du/dt = d/dx (D(x) du/dx) with
/// D = sigma_k^2 / 2 in phase k, zero flux at both far ends. Interfaces sit
/// on cell faces, where the face coefficient is the harmonic mean of the
/// neighbouring cells; this is what carries continuity of u and of
/// D du/dx across the interface.
///
/// The run starts at grid.t_warm from cell averages of the closed-form
/// kernel when one exists (Gaussian of the source phase otherwise) and
/// throws SolverError if the mass drifts by more than 1e-4.
inline GridSolution solve_system(const PhaseSystem& sys, const SolverGrid& grid, double t_end) {
    grid.validate(sys, t_end);
    const std::size_t n = grid.nx;
    const double dx = grid.dx();

    // Snap interfaces to faces.
    std::vector<double> snapped;
    double snap = 0.0;
    for (double b : sys.boundaries()) {
        const double face = grid.x_min + std::round((b - grid.x_min) / dx) * dx;
        snap = std::max(snap, std::abs(face - b));
        snapped.push_back(face);
    }
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.center(i);
        std::size_t k = 0;
        while (k < snapped.size() && x < snapped[k]) ++k;
        const double s = sys.sigmas()[k];
        diff[i] = 0.5 * s * s;
    }
    // Face coefficients; faces 0 and n are the zero-flux walls.
    std::vector<double> face(n + 1, 0.0);
    for (std::size_t i = 1; i < n; ++i) face[i] = 2.0 * diff[i - 1] * diff[i] / (diff[i - 1] + diff[i]);

    // Warm start: cell averages from CDF differences so the initial mass is exact.
    GridSolution sol;
    sol.grid = grid;
    sol.max_snap_distance = snap;
    const bool exact = system_cdf(sys, 0.0, grid.t_warm).has_value();
    sol.warm_start_exact = exact;
    const double source_scale = sys.sigmas()[sys.source_phase()] * std::sqrt(grid.t_warm);
    auto cdf0 = [&](double x) {
        if (exact) return *system_cdf(sys, x, grid.t_warm);
        return std_normal_cdf(x / source_scale);
    };
    std::vector<double> u(n);
    double prev = cdf0(grid.x_min);
    for (std::size_t i = 0; i < n; ++i) {
        const double next = cdf0(grid.x_min + static_cast<double>(i + 1) * dx);
        u[i] = (next - prev) / dx;
        prev = next;
    }

    const auto steps = static_cast<std::size_t>(std::max(1.0, std::round((t_end - grid.t_warm) / grid.dt)));
    const double dt = (t_end - grid.t_warm) / static_cast<double>(steps);
    const double r = 0.5 * dt / (dx * dx);

    // Implicit matrix (I - r A): lower a, diagonal b, upper c. Factor once.
    std::vector<double> a(n), b(n), c(n), cprime(n), denom(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = -r * face[i];
        c[i] = -r * face[i + 1];
        b[i] = 1.0 + r * (face[i] + face[i + 1]);
    }
    denom[0] = b[0];
    cprime[0] = c[0] / denom[0];
    for (std::size_t i = 1; i < n; ++i) {
        denom[i] = b[i] - a[i] * cprime[i - 1];
        cprime[i] = c[i] / denom[i];
    }

    auto mass_of = [&](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        return m * dx;
    };
    double drift = std::abs(mass_of(u) - 1.0);
    std::vector<double> rhs(n);
    for (std::size_t step = 0; step < steps; ++step) {
        for (std::size_t i = 0; i < n; ++i) {
            const double left = i > 0 ? u[i - 1] : 0.0;
            const double right = i + 1 < n ? u[i + 1] : 0.0;
            rhs[i] = u[i] + r * (face[i] * (left - u[i]) + face[i + 1] * (right - u[i]));
        }
        // Thomas forward sweep and back substitution.
        rhs[0] /= denom[0];
        for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - a[i] * rhs[i - 1]) / denom[i];
        u[n - 1] = rhs[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) u[i] = rhs[i] - cprime[i] * u[i + 1];
        drift = std::max(drift, std::abs(mass_of(u) - 1.0));
    }

    sol.t = t_end;
    sol.values = std::move(u);
    sol.mass = mass_of(sol.values);
    sol.max_mass_drift = drift;
    sol.dt_used = dt;
    sol.steps = steps;
    if (drift > 1e-4) {
        std::ostringstream msg;
        msg << "solve_system: mass drift " << drift << " exceeds 1e-4 (final mass " << sol.mass << ", nx "
            << n << ", dt " << dt << ", snap " << snap << ")";
        throw SolverError(msg.str());
    }
    return sol;
}

struct ClosedFormComparison {
    double sup_abs_error = 0.0;
    double sup_reference = 0.0;
    double sup_rel_error = 0.0;  // sup_abs_error / sup_reference
    double x_at_max = 0.0;
};

/// Sup-norm distance between the solve and the closed-form density at the
/// cell centres inside [lo, hi]. Throws DomainError when `sys` has no
/// closed form.
inline ClosedFormComparison compare_to_closed_form(const GridSolution& sol, const PhaseSystem& sys, double lo,
                                                   double hi) {
    if (!system_pdf(sys, 0.0, sol.t)) throw DomainError("compare_to_closed_form: no closed form for this system");
    ClosedFormComparison out;
    for (std::size_t i = 0; i < sol.values.size(); ++i) {
        const double x = sol.grid.center(i);
        if (x < lo || x > hi) continue;
        const double ref = *system_pdf(sys, x, sol.t);
        const double err = std::abs(sol.values[i] - ref);
        out.sup_reference = std::max(out.sup_reference, std::abs(ref));
        if (err > out.sup_abs_error) {
            out.sup_abs_error = err;
            out.x_at_max = x;
        }
    }
    out.sup_rel_error = out.sup_reference > 0.0 ? out.sup_abs_error / out.sup_reference : 0.0;
    return out;
}

}  // namespace multiphase
