// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <optional>

#include "multiphase/numerics/special.hpp"
#include "multiphase/phase_kernel/params.hpp"
#include "multiphase/phase_kernel/three_phase.hpp"
#include "multiphase/phase_kernel/two_phase.hpp"

namespace multiphase {

inline std::optional<TwoPhaseParams> as_two_phase(const PhaseSystem& sys) {
    if (sys.phase_count() != 2) return std::nullopt;
    return TwoPhaseParams{sys.sigmas()[0], sys.sigmas()[1], sys.boundaries()[0]};
}

/// Three-phase closed form exists only with the source in the middle phase.
inline std::optional<ThreePhaseParams> as_three_phase(const PhaseSystem& sys) {
    if (sys.phase_count() != 3 || sys.source_phase() != 1) return std::nullopt;
    const auto& s = sys.sigmas();
    const auto& b = sys.boundaries();
    return ThreePhaseParams{s[0], s[1], s[2], b[0], b[1]};
}

/// True when the system has a closed-form kernel (two phases, or three with
/// a middle source).
inline bool has_closed_form(const PhaseSystem& sys) {
    return as_two_phase(sys).has_value() || as_three_phase(sys).has_value();
}

/// Closed-form density when available; uniform systems reduce to a Gaussian.
inline std::optional<double> system_pdf(const PhaseSystem& sys, double x, double t) {
    if (auto p = as_two_phase(sys)) return two_phase_pdf(*p, x, t);
    if (auto p = as_three_phase(sys)) return three_phase_pdf(*p, x, t);
    if (sys.uniform()) return normal_pdf(x, 0.0, sys.sigmas().front() * std::sqrt(t));
    return std::nullopt;
}

inline std::optional<double> system_cdf(const PhaseSystem& sys, double x, double t) {
    if (auto p = as_two_phase(sys)) return two_phase_cdf(*p, x, t);
    if (auto p = as_three_phase(sys)) return three_phase_cdf(*p, x, t);
    if (sys.uniform()) return std_normal_cdf(x / (sys.sigmas().front() * std::sqrt(t)));
    return std::nullopt;
}

}  // namespace multiphase
