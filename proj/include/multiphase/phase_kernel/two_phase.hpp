// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "multiphase/numerics/quadrature.hpp"
#include "multiphase/numerics/rng.hpp"
#include "multiphase/numerics/roots.hpp"
#include "multiphase/numerics/special.hpp"
#include "multiphase/phase_kernel/moments.hpp"
#include "multiphase/phase_kernel/params.hpp"

namespace multiphase {

// Closed-form two-phase heat kernel.
//
// For q > 0 the source lies in the lower phase. With s_k = sigma_k sqrt(t):
//   upper (x > q): 2 sigma1/(sigma1+sigma2) N(x; (1 - sigma1/sigma2) q, s1^2)
//   lower (x < q): N(x; 0, s2^2) + (sigma2-sigma1)/(sigma1+sigma2) N(x; 2q, s2^2)
// For q <= 0 the source lies in the upper phase and the roles swap:
//   upper (x > q): N(x; 0, s1^2) + (sigma1-sigma2)/(sigma1+sigma2) N(x; 2q, s1^2)
//   lower (x < q): 2 sigma2/(sigma1+sigma2) N(x; (1 - sigma2/sigma1) q, s2^2)
// Both branches coincide at q = 0. A point x == q is evaluated with the upper
// phase's expression.

/// Density of phase `phase` (1 = upper, 2 = lower) under the active q-branch,
/// evaluated at any x (the expression is analytic across the boundary).
inline double two_phase_phase_density(const TwoPhaseParams& p, int phase, double x, double t) {
    p.validate();
    detail::require_time(t);
    const double rt = std::sqrt(t);
    const double s1 = p.sigma1 * rt;
    const double s2 = p.sigma2 * rt;
    const double sum = p.sigma1 + p.sigma2;
    if (p.q > 0.0) {
        if (phase == 1) return 2.0 * p.sigma1 / sum * normal_pdf(x, (1.0 - p.sigma1 / p.sigma2) * p.q, s1);
        return normal_pdf(x, 0.0, s2) + (p.sigma2 - p.sigma1) / sum * normal_pdf(x, 2.0 * p.q, s2);
    }
    if (phase == 1) return normal_pdf(x, 0.0, s1) + (p.sigma1 - p.sigma2) / sum * normal_pdf(x, 2.0 * p.q, s1);
    return 2.0 * p.sigma2 / sum * normal_pdf(x, (1.0 - p.sigma2 / p.sigma1) * p.q, s2);
}

inline double two_phase_pdf(const TwoPhaseParams& p, double x, double t) {
    return two_phase_phase_density(p, x >= p.q ? 1 : 2, x, t);
}

/// Closed-form CDF assembled from the per-phase Gaussian pieces. The upper
/// tail is written as 1 - (tail mass) so that it saturates cleanly.
inline double two_phase_cdf(const TwoPhaseParams& p, double x, double t) {
    p.validate();
    detail::require_time(t);
    const double rt = std::sqrt(t);
    const double s1 = p.sigma1 * rt;
    const double s2 = p.sigma2 * rt;
    const double sum = p.sigma1 + p.sigma2;
    const double q = p.q;
    if (q > 0.0) {
        if (x < q) {
            return std_normal_cdf(x / s2) + (p.sigma2 - p.sigma1) / sum * std_normal_cdf((x - 2.0 * q) / s2);
        }
        const double m1 = (1.0 - p.sigma1 / p.sigma2) * q;
        return 1.0 - 2.0 * p.sigma1 / sum * std_normal_cdf(-(x - m1) / s1);
    }
    if (x < q) {
        const double m2 = (1.0 - p.sigma2 / p.sigma1) * q;
        return 2.0 * p.sigma2 / sum * std_normal_cdf((x - m2) / s2);
    }
    return 1.0 - std_normal_cdf(-x / s1) - (p.sigma1 - p.sigma2) / sum * std_normal_cdf(-(x - 2.0 * q) / s1);
}

/// Interval certain to hold all but ~1e-30 of the mass.
inline std::pair<double, double> two_phase_support(const TwoPhaseParams& p, double t, double width = 12.0) {
    const double spread = width * std::max(p.sigma1, p.sigma2) * std::sqrt(t);
    const double lo = std::min({0.0, p.q, 2.0 * p.q});
    const double hi = std::max({0.0, p.q, 2.0 * p.q});
    return {std::min(lo, 0.0) - spread, std::max(hi, 0.0) + spread};
}

/// Quantile by bracketed inversion of two_phase_cdf.
inline double two_phase_quantile(const TwoPhaseParams& p, double u, double t) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("two_phase_quantile: u must lie in (0, 1)");
    const double fq = two_phase_cdf(p, p.q, t);
    const double step = std::max(p.sigma1, p.sigma2) * std::sqrt(t);
    auto [lo, hi] = two_phase_support(p, t);
    if (u < fq) {
        hi = p.q;
        while (two_phase_cdf(p, lo, t) > u) lo -= 4.0 * step;
    } else {
        lo = p.q;
        while (two_phase_cdf(p, hi, t) < u) hi += 4.0 * step;
    }
    const double tol = 1e-14 * std::max(step, std::abs(p.q));
    return find_root_bracketed([&](double x) { return two_phase_cdf(p, x, t) - u; }, lo, hi, tol);
}

struct SampleDraws {
    std::vector<double> values;
    RngState rng;
};

/// n i.i.d. draws by CDF inversion; returns the advanced generator state.
inline SampleDraws two_phase_sample(const TwoPhaseParams& p, double t, std::size_t n, RngState rng) {
    p.validate();
    detail::require_time(t);
    SampleDraws out{{}, rng};
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.values.push_back(two_phase_quantile(p, out.rng.next_open01(), t));
    return out;
}

/// Mean, variance, skewness and kurtosis by adaptive quadrature of the
/// density over +-12 max(sigma) sqrt(t), split at the interface.
inline MomentSummary two_phase_moments(const TwoPhaseParams& p, double t, QuadratureSpec spec = {1e-14, 1e-13, 4000}) {
    p.validate();
    detail::require_time(t);
    const double scale = std::max(p.sigma1, p.sigma2) * std::sqrt(t);
    return detail::moments_by_quadrature([&](double x) { return two_phase_pdf(p, x, t); }, scale, {p.q}, spec);
}

}  // namespace multiphase
