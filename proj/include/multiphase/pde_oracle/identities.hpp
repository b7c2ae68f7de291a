// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <numbers>

#include "multiphase/error.hpp"
#include "multiphase/numerics/quadrature.hpp"
#include "multiphase/numerics/special.hpp"

namespace multiphase {

// Quadrature checks of the time-convolution integrals behind the two-phase
// closed form. Each returns the numerically integrated left side and the
// closed-form right side. Integrals over tau in (0, t) carry inverse square
// root endpoint factors and use the sin^2 substitution.

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_error() const { return std::abs(lhs - rhs); }
};

namespace detail {
inline QuadratureSpec identity_quadrature() {
    QuadratureSpec spec{1e-14, 1e-11, 4000};
    spec.sqrt_endpoint_singularity = true;
    return spec;
}
}  // namespace detail

/// int_0^t exp(-q^2 / (4 a tau)) / sqrt(tau (t - tau)) dtau = pi erfc(|q| / (2 sqrt(a t))).
inline IdentityCheck check_erfc_kernel_identity(double q, double a, double t) {
    if (!(a > 0.0) || !(t > 0.0)) throw DomainError("check_erfc_kernel_identity: need a > 0, t > 0");
    auto f = [&](double tau) { return std::exp(-q * q / (4.0 * a * tau)) / std::sqrt(tau * (t - tau)); };
    const double lhs = integrate_adaptive(f, 0.0, t, detail::identity_quadrature()).value;
    return {lhs, std::numbers::pi * erfc(std::abs(q) / (2.0 * std::sqrt(a * t)))};
}

/// int_0^t exp(-alpha^2/(t - tau)) exp(-beta^2/tau) / sqrt(tau (t - tau)) dtau
///   = pi erfc((|alpha| + |beta|) / sqrt t).
inline IdentityCheck check_symmetric_erfc_identity(double alpha, double beta, double t) {
    if (!(t > 0.0)) throw DomainError("check_symmetric_erfc_identity: need t > 0");
    auto f = [&](double tau) {
        const double rest = t - tau;
        return std::exp(-alpha * alpha / rest) * std::exp(-beta * beta / tau) / std::sqrt(tau * rest);
    };
    const double lhs = integrate_adaptive(f, 0.0, t, detail::identity_quadrature()).value;
    return {lhs, std::numbers::pi * erfc((std::abs(alpha) + std::abs(beta)) / std::sqrt(t))};
}

/// int_0^t exp(-y^2/(4 a1 (t - tau))) exp(-q^2/(4 a2 tau)) tau^(-3/2) (t - tau)^(-1/2) dtau
///   = 2 sqrt(pi a2) / (|q| sqrt t) exp(-(|y| / (2 sqrt(a1 t)) + |q| / (2 sqrt(a2 t)))^2).
/// Requires q != 0.
inline IdentityCheck check_two_scale_kernel_identity(double y, double q, double a1, double a2, double t) {
    if (!(a1 > 0.0) || !(a2 > 0.0) || !(t > 0.0) || q == 0.0) {
        throw DomainError("check_two_scale_kernel_identity: need a1, a2, t > 0 and q != 0");
    }
    auto f = [&](double tau) {
        const double rest = t - tau;
        return std::exp(-y * y / (4.0 * a1 * rest)) * std::exp(-q * q / (4.0 * a2 * tau)) /
               (tau * std::sqrt(tau * rest));
    };
    const double lhs = integrate_adaptive(f, 0.0, t, detail::identity_quadrature()).value;
    const double e = std::abs(y) / (2.0 * std::sqrt(a1 * t)) + std::abs(q) / (2.0 * std::sqrt(a2 * t));
    return {lhs, 2.0 * std::sqrt(std::numbers::pi * a2) / (std::abs(q) * std::sqrt(t)) * std::exp(-e * e)};
}

/// Single-diffusivity case of the two-scale identity (a1 == a2 == a).
inline IdentityCheck check_gaussian_kernel_identity(double y, double q, double a, double t) {
    return check_two_scale_kernel_identity(y, q, a, a, t);
}

}  // namespace multiphase
