// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <type_traits>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "multiphase/error.hpp"
#include "multiphase/numerics/special.hpp"
#include "multiphase/pde_oracle/solver.hpp"
#include "multiphase/phase_kernel/params.hpp"
#include "multiphase/phase_kernel/system.hpp"
#include "multiphase/phase_kernel/three_phase.hpp"
#include "multiphase/phase_kernel/two_phase.hpp"

namespace multiphase {

/// Inclusive grid a:b with n points.
struct LinearGrid {
    double a = -1.0;
    double b = 1.0;
    std::size_t n = 401;

    void validate() const {
        if (n == 0) throw DomainError("grid must have at least one point");
        if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("grid endpoints must be finite");
        if (n > 1 && !(b > a)) throw DomainError("grid needs b > a when n > 1");
    }
    double at(std::size_t i) const {
        if (n == 1) return a;
        return a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    double step() const { return n > 1 ? (b - a) / static_cast<double>(n - 1) : 0.0; }
};

using DensityModel = std::variant<TwoPhaseParams, ThreePhaseParams, PhaseSystem>;

struct DensityTable {
    std::vector<double> x;
    std::vector<double> density;
    /// Normal density with the model's mean and variance; only for closed forms.
    std::optional<std::vector<double>> normal_density;
    /// True when values come from the PDE solver rather than a closed form.
    bool numerical = false;
};

namespace detail {

inline std::optional<MomentSummary> closed_form_moments(const PhaseSystem& sys, double t) {
    if (auto p = as_two_phase(sys)) return two_phase_moments(*p, t);
    if (auto p = as_three_phase(sys)) return three_phase_moments(*p, t);
    if (sys.uniform()) {
        const double s = sys.sigmas().front();
        return MomentSummary{0.0, s * s * t, 0.0, 3.0};
    }
    return std::nullopt;
}

inline PhaseSystem as_system(const DensityModel& m) {
    return std::visit([](const auto& v) -> PhaseSystem {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PhaseSystem>) {
            return v;
        } else {
            return PhaseSystem::from(v);
        }
    }, m);
}

}  // namespace detail

/// Density on an arithmetic grid. Closed forms are used whenever they exist;
/// other layouts are solved numerically and flagged.
inline DensityTable density_grid(const DensityModel& model, double t, const LinearGrid& grid,
                                 bool with_normal = true) {
    grid.validate();
    detail::require_time(t);
    const PhaseSystem sys = detail::as_system(model);
    DensityTable out;
    out.x.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) out.x[i] = grid.at(i);

    if (has_closed_form(sys) || sys.uniform()) {
        out.density.reserve(grid.n);
        for (double x : out.x) out.density.push_back(*system_pdf(sys, x, t));
        if (with_normal) {
            const MomentSummary m = *detail::closed_form_moments(sys, t);
            const double sd = std::sqrt(m.variance);
            std::vector<double> col;
            col.reserve(grid.n);
            for (double x : out.x) col.push_back(normal_pdf(x, m.mean, sd));
            out.normal_density = std::move(col);
        }
        return out;
    }
    const double t_warm = std::min(0.05, 0.5 * t);
    const SolverGrid g = make_solver_grid(sys, t, 2001, std::min(1e-4, 0.01 * t), t_warm);
    const GridSolution sol = solve_system(sys, g, t);
    out.numerical = true;
    out.density.reserve(grid.n);
    for (double x : out.x) out.density.push_back(sol.at(x));
    return out;
}

}  // namespace multiphase
