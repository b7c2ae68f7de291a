// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "multiphase/error.hpp"

namespace multiphase {

/// Accuracy contract for integrate_adaptive. Integration stops once the
/// summed error estimate is below max(abs_tol, rel_tol * |value|).
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 2000;
    /// Integrand behaves like (x-a)^(-1/2) (b-x)^(-1/2) at the finite ends.
    /// Applies the substitution x = a + (b-a) sin^2(theta), which cancels
    /// both inverse square roots. Ignored on infinite ranges.
    bool sqrt_endpoint_singularity = false;

    void validate() const {
        if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
        if (!(rel_tol >= 0.0)) throw DomainError("QuadratureSpec: rel_tol must be >= 0");
        if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double err_est = 0.0;
    int subdivisions = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment kronrod15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <class F>
QuadratureResult integrate_finite(const F& f, double a, double b, const QuadratureSpec& spec) {
    if (a == b) return {};
    std::priority_queue<Segment> work;
    work.push(kronrod15(f, a, b));
    double total = work.top().value;
    double error = work.top().error;
    int subdivisions = 1;
    auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    while (error > target()) {
        if (subdivisions >= spec.max_subdivisions) {
            std::ostringstream msg;
            msg << "integrate_adaptive: no convergence after " << subdivisions
                << " subdivisions on [" << a << ", " << b << "], estimate " << total
                << " +/- " << error;
            throw QuadratureError(msg.str(), total, error);
        }
        const Segment worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval exhausted at double precision; accept what we have.
            break;
        }
        const Segment left = kronrod15(f, worst.a, mid);
        const Segment right = kronrod15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
        ++subdivisions;
    }
    // Re-sum to shed accumulated update round-off.
    double value = 0.0, err = 0.0;
    while (!work.empty()) {
        value += work.top().value;
        err += work.top().error;
        work.pop();
    }
    if (!std::isfinite(value)) {
        throw QuadratureError("integrate_adaptive: non-finite integrand", value, err);
    }
    return {value, err, subdivisions};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature with global error control.
///
/// Infinite limits are mapped to a finite interval with x = a + (1-s)/s
/// (and its mirror); a doubly infinite range is split at 0. Throws
/// QuadratureError with the best estimate when max_subdivisions is reached.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (std::isnan(a) || std::isnan(b)) throw DomainError("integrate_adaptive: NaN limit");
    if (a > b) {
        auto r = integrate_adaptive(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    const bool lo_inf = a == -inf;
    const bool hi_inf = b == inf;

    if (lo_inf && hi_inf) {
        QuadratureSpec half = spec;
        half.abs_tol = 0.5 * spec.abs_tol;
        auto left = integrate_adaptive(f, -inf, 0.0, half);
        auto right = integrate_adaptive(f, 0.0, inf, half);
        return {left.value + right.value, left.err_est + right.err_est,
                left.subdivisions + right.subdivisions};
    }
    if (hi_inf) {
        auto g = [&](double s) {
            if (s <= 0.0) return 0.0;
            const double x = a + (1.0 - s) / s;
            return f(x) / (s * s);
        };
        return detail::integrate_finite(g, 0.0, 1.0, spec);
    }
    if (lo_inf) {
        auto g = [&](double s) {
            if (s <= 0.0) return 0.0;
            const double x = b - (1.0 - s) / s;
            return f(x) / (s * s);
        };
        return detail::integrate_finite(g, 0.0, 1.0, spec);
    }
    if (spec.sqrt_endpoint_singularity) {
        const double width = b - a;
        auto g = [&](double theta) {
            const double s = std::sin(theta);
            const double c = std::cos(theta);
            // Measure from the nearer end so x never rounds onto the singular point.
            const double x = theta < std::numbers::pi / 4.0 ? a + width * s * s : b - width * c * c;
            const double jac = 2.0 * width * s * c;
            // Within rounding of an end the weight vanishes faster than f can grow.
            if (jac == 0.0 || x <= a || x >= b) return 0.0;
            return f(x) * jac;
        };
        return detail::integrate_finite(g, 0.0, std::numbers::pi / 2.0, spec);
    }
    return detail::integrate_finite(f, a, b, spec);
}

/// Integrates over consecutive sub-intervals split at the given breakpoints
/// (sorted internally, points outside (a, b) dropped). Use for integrands
/// with known kinks.
template <class F>
QuadratureResult integrate_piecewise(const F& f, double a, double b, std::vector<double> breaks,
                                     const QuadratureSpec& spec = {}) {
    std::vector<double> pts{a};
    std::sort(breaks.begin(), breaks.end());
    for (double x : breaks)
        if (x > pts.back() && x < b) pts.push_back(x);
    pts.push_back(b);
    QuadratureSpec piece = spec;
    piece.abs_tol = spec.abs_tol / static_cast<double>(pts.size() - 1);
    QuadratureResult out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        auto r = integrate_adaptive(f, pts[i], pts[i + 1], piece);
        out.value += r.value;
        out.err_est += r.err_est;
        out.subdivisions += r.subdivisions;
    }
    return out;
}

}  // namespace multiphase
