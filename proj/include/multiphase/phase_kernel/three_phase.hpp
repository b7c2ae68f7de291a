// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multiphase/error.hpp"
#include "multiphase/numerics/special.hpp"
#include "multiphase/phase_kernel/moments.hpp"
#include "multiphase/phase_kernel/params.hpp"

namespace multiphase {

// Three-phase kernel with the source in the middle slab (q2, q1).
//
// In the travel coordinate xi = integral dx / sigma(x) every phase diffuses
// with unit rate, so the kernel is a sum of Gaussian images produced by
// repeated partial reflection inside the slab. Hitting the interface from
// phase a towards phase b reflects with R = (sigma_a - sigma_b)/(sigma_a + sigma_b)
// and transmits with T = 2 sigma_b/(sigma_a + sigma_b); a density observed in
// phase k carries the factor 1/(sigma_k sqrt t). With L = q1 - q2,
// R1 = (sigma2 - sigma1)/(sigma1 + sigma2) and R3 = (sigma2 - sigma3)/(sigma2 + sigma3):
//
//   middle: sum_k (R1 R3)^|k|        N(x; 2kL)
//         + sum_{k>=0} R1^(k+1) R3^k N(x; 2q1 + 2kL)
//         + sum_{k>=1} R1^(k-1) R3^k N(x; 2q1 - 2kL)          (scale s2)
//   upper:  T1 sum over slab paths ending at q1, path length D:
//           D = q1 + 2kL (weight (R1 R3)^k), D = 2kL - q1 (weight R1^(k-1) R3^k),
//           N(x; q1 - (sigma1/sigma2) D)                         (scale s1)
//   lower:  the mirror image through the slab, centred at q2 + (sigma3/sigma2) D.
//
// Each image satisfies both interface conditions term by term, so every
// truncation of the series is continuous across q1 and q2 up to the shells
// left out. With all sigmas equal R1 = R3 = 0 and only the direct Gaussian
// survives.

/// Truncation policy: symmetric shells k = 0, 1, 2, ... are added until a
/// shell contributes less than rel_tol of the running sum, with at least
/// `min_shells` beyond k = 0.
struct SeriesControl {
    double rel_tol = 1e-13;
    int min_shells = 3;
    int max_shells = 100000;
};

namespace detail {

struct SlabCoefficients {
    double L, R1, R3, T1, T3, rho1, rho3;

    explicit SlabCoefficients(const ThreePhaseParams& p)
        : L(p.q1 - p.q2),
          R1((p.sigma2 - p.sigma1) / (p.sigma1 + p.sigma2)),
          R3((p.sigma2 - p.sigma3) / (p.sigma2 + p.sigma3)),
          T1(2.0 * p.sigma1 / (p.sigma1 + p.sigma2)),
          T3(2.0 * p.sigma3 / (p.sigma2 + p.sigma3)),
          rho1(p.sigma1 / p.sigma2),
          rho3(p.sigma3 / p.sigma2) {}
};


// Weight R_near^(k-1) R_far^k without dividing by a possibly zero R_near.
inline double away_weight(double r_near, double r_far, int k) {
    return std::pow(r_near, k - 1) * std::pow(r_far, k);
}

template <class Term>
double sum_shells(const SeriesControl& ctl, Term&& shell) {
    double total = 0.0;
    for (int k = 0; k <= ctl.max_shells; ++k) {
        const double s = shell(k);
        total += s;
        if (k >= ctl.min_shells && std::abs(s) <= ctl.rel_tol * std::abs(total)) return total;
        if (k >= ctl.min_shells && total == 0.0 && s == 0.0) return total;
    }
    throw NumericalError("three-phase series did not converge within max_shells");
}

}  // namespace detail

/// Density of phase `phase` (1 = upper, 2 = middle, 3 = lower), evaluated
/// with that phase's expression at any x.
inline double three_phase_phase_density(const ThreePhaseParams& p, int phase, double x, double t,
                                        const SeriesControl& ctl = {}) {
    p.validate();
    detail::require_time(t);
    const detail::SlabCoefficients c(p);
    const double rt = std::sqrt(t);
    if (phase == 2) {
        const double s2 = p.sigma2 * rt;
        return detail::sum_shells(ctl, [&](int k) {
            const double both = std::pow(c.R1 * c.R3, k);
            double v = k == 0 ? normal_pdf(x, 0.0, s2)
                              : both * (normal_pdf(x, 2.0 * k * c.L, s2) + normal_pdf(x, -2.0 * k * c.L, s2));
            v += c.R1 * both * normal_pdf(x, 2.0 * p.q1 + 2.0 * k * c.L, s2);
            if (k >= 1) v += detail::away_weight(c.R1, c.R3, k) * normal_pdf(x, 2.0 * p.q1 - 2.0 * k * c.L, s2);
            return v;
        });
    }
    const bool upper = phase == 1;
    const double sk = (upper ? p.sigma1 : p.sigma3) * rt;
    const double rho = upper ? c.rho1 : c.rho3;
    const double edge = upper ? p.q1 : p.q2;
    const double dir = upper ? -1.0 : 1.0;  // image centre = edge + dir * rho * D
    const double near = upper ? p.q1 : -p.q2;
    const double r_near = upper ? c.R1 : c.R3;
    const double r_far = upper ? c.R3 : c.R1;
    const double trans = upper ? c.T1 : c.T3;
    const double sum = detail::sum_shells(ctl, [&](int k) {
        const double D0 = near + 2.0 * k * c.L;
        double v = std::pow(r_near * r_far, k) * normal_pdf(x, edge + dir * rho * D0, sk);
        if (k >= 1) {
            const double D1 = 2.0 * k * c.L - near;
            v += detail::away_weight(r_near, r_far, k) * normal_pdf(x, edge + dir * rho * D1, sk);
        }
        return v;
    });
    return trans * sum;
}

/// Three-phase density. Points on an interface use the upper phase's
/// expression. Truncation noise below rel_tol is clamped to zero; a larger
/// negative value throws ConsistencyError.
inline double three_phase_pdf(const ThreePhaseParams& p, double x, double t, const SeriesControl& ctl = {}) {
    if (!(ctl.rel_tol > 0.0)) throw DomainError("three_phase_pdf: series tolerance must be > 0");
    const int phase = x >= p.q1 ? 1 : (x >= p.q2 ? 2 : 3);
    const double v = three_phase_phase_density(p, phase, x, t, ctl);
    if (v < 0.0) {
        if (v >= -ctl.rel_tol) return 0.0;
        std::ostringstream msg;
        msg << "three_phase_pdf: negative density " << v << " at x = " << x;
        throw ConsistencyError(msg.str());
    }
    return v;
}

/// Closed-form CDF: every image Gaussian integrates to a normal CDF term.
inline double three_phase_cdf(const ThreePhaseParams& p, double x, double t, const SeriesControl& ctl = {}) {
    p.validate();
    detail::require_time(t);
    const detail::SlabCoefficients c(p);
    const double rt = std::sqrt(t);
    const double s1 = p.sigma1 * rt, s2 = p.sigma2 * rt, s3 = p.sigma3 * rt;
    // Mass of phase 3 below y <= q2.
    auto lower_mass = [&](double y) {
        return c.T3 * detail::sum_shells(ctl, [&](int k) {
            const double D0 = -p.q2 + 2.0 * k * c.L;
            double v = std::pow(c.R3 * c.R1, k) * std_normal_cdf((y - p.q2 - c.rho3 * D0) / s3);
            if (k >= 1) {
                const double D1 = 2.0 * k * c.L + p.q2;
                v += detail::away_weight(c.R3, c.R1, k) * std_normal_cdf((y - p.q2 - c.rho3 * D1) / s3);
            }
            return v;
        });
    };
    if (x < p.q2) return lower_mass(x);
    if (x >= p.q1) {
        const double tail = c.T1 * detail::sum_shells(ctl, [&](int k) {
            const double D0 = p.q1 + 2.0 * k * c.L;
            double v = std::pow(c.R1 * c.R3, k) * std_normal_cdf(-(x - p.q1 + c.rho1 * D0) / s1);
            if (k >= 1) {
                const double D1 = 2.0 * k * c.L - p.q1;
                v += detail::away_weight(c.R1, c.R3, k) * std_normal_cdf(-(x - p.q1 + c.rho1 * D1) / s1);
            }
            return v;
        });
        return 1.0 - tail;
    }
    // Middle phase: phase-3 mass plus the middle images integrated over (q2, x).
    auto seg = [&](double centre) {
        return std_normal_cdf((x - centre) / s2) - std_normal_cdf((p.q2 - centre) / s2);
    };
    const double middle = detail::sum_shells(ctl, [&](int k) {
        const double both = std::pow(c.R1 * c.R3, k);
        double v = k == 0 ? seg(0.0) : both * (seg(2.0 * k * c.L) + seg(-2.0 * k * c.L));
        v += c.R1 * both * seg(2.0 * p.q1 + 2.0 * k * c.L);
        if (k >= 1) v += detail::away_weight(c.R1, c.R3, k) * seg(2.0 * p.q1 - 2.0 * k * c.L);
        return v;
    });
    return lower_mass(p.q2) + middle;
}

inline MomentSummary three_phase_moments(const ThreePhaseParams& p, double t,
                                         QuadratureSpec spec = {1e-13, 1e-12, 4000}) {
    p.validate();
    detail::require_time(t);
    const double scale = std::max({p.sigma1, p.sigma2, p.sigma3}) * std::sqrt(t);
    const double reach = std::max(p.q1, -p.q2);
    // Widen so the +-12 window still covers the interfaces.
    const double span = std::max(scale, reach / 6.0);
    return detail::moments_by_quadrature([&](double x) { return three_phase_pdf(p, x, t); }, span, {p.q1, p.q2},
                                         spec);
}

}  // namespace multiphase
