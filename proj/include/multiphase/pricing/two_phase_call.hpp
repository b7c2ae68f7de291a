// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multiphase/error.hpp"
#include "multiphase/numerics/quadrature.hpp"
#include "multiphase/numerics/special.hpp"
#include "multiphase/phase_kernel/two_phase.hpp"
#include "multiphase/pricing/terms.hpp"

namespace multiphase {

// Risk-neutral pricing with log-price ln S_T = ln S + mu_bar tau + Z_tau and
// Z_tau two-phase distributed. Lambda(tau) = E[e^Z] fixes mu_bar so that the
// discounted stock is a martingale.

struct PricingModel {
    TwoPhaseParams params;
};

/// E[exp(Z_t)] in closed form. q == 0 takes the q <= 0 branch.
inline double lambda_normalizer(const TwoPhaseParams& p, double t) {
    p.validate();
    detail::require_time(t);
    const double s1 = p.sigma1, s2 = p.sigma2, q = p.q;
    const double rt = std::sqrt(t);
    const double sum = s1 + s2;
    if (q > 0.0) {
        const double m1 = (1.0 - s1 / s2) * q;
        return std::exp(0.5 * s1 * s1 * t + m1) * 2.0 * s1 / sum * std_normal_cdf((-q + s1 * s2 * t) / (s2 * rt)) +
               std::exp(0.5 * s2 * s2 * t) *
                   (std_normal_cdf((q - s2 * s2 * t) / (s2 * rt)) +
                    (s2 - s1) / sum * std::exp(2.0 * q) * std_normal_cdf((-q - s2 * s2 * t) / (s2 * rt)));
    }
    const double m2 = (1.0 - s2 / s1) * q;
    return std::exp(0.5 * s1 * s1 * t) *
               (std_normal_cdf((-q + s1 * s1 * t) / (s1 * rt)) +
                (s1 - s2) / sum * std::exp(2.0 * q) * std_normal_cdf((q + s1 * s1 * t) / (s1 * rt))) +
           std::exp(0.5 * s2 * s2 * t + m2) * 2.0 * s2 / sum * std_normal_cdf((q - s1 * s2 * t) / (s1 * rt));
}

/// Annualised risk-neutral drift r - ln Lambda(tau) / tau.
inline double drift_mu_bar(const TwoPhaseParams& p, double r, double tau) {
    return r - std::log(lambda_normalizer(p, tau)) / tau;
}

struct CallQuote {
    double price = 0.0;
    int regime = 0;  // 1..4
    double mu_bar = 0.0;
    double lambda = 0.0;
    double threshold = 0.0;  // m = ln(K/S) - mu_bar tau
};

/// Regime of the closed form. m is the log-moneyness threshold above which Z
/// finishes in the money. Ties go to the q <= 0 family at q == 0 and to the
/// in-the-money side at q == m.
inline int call_regime(double q, double m) {
    if (q > 0.0) return q <= m ? 1 : 2;
    return q <= m ? 3 : 4;
}

/// Closed-form call price S Psi_i1 - K e^{-r tau} Psi_i2.
///
/// Psi_i1 and Psi_i2 are the discounted share-measure and risk-neutral
/// exercise probabilities, each split at q into the pieces that fall in the
/// money. Regime 2's share term applies the transmission factor
/// 2 sigma1/(sigma1 + sigma2) to the upper-phase piece only, and regime 4's
/// exercise probability carries the bare (sigma1 - sigma2)/(sigma1 + sigma2)
/// mass the upper phase loses through the interface.
inline CallQuote price_call_detail(const PricingModel& model, const OptionTerms& terms) {
    terms.validate();
    const TwoPhaseParams& p = model.params;
    p.validate();
    const double S = terms.spot, K = terms.strike, r = terms.rate, tau = terms.tau();
    const double s1 = p.sigma1, s2 = p.sigma2, q = p.q;
    const double rt = std::sqrt(tau);
    const double v1 = s1 * rt, v2 = s2 * rt;
    const double sum = s1 + s2;
    const double T1 = 2.0 * s1 / sum, T2 = 2.0 * s2 / sum;
    const double c1 = (s1 - s2) / sum;
    const double c2 = -c1;
    const double m1 = (1.0 - s1 / s2) * q;
    const double m2 = (1.0 - s2 / s1) * q;

    CallQuote out;
    out.lambda = lambda_normalizer(p, tau);
    out.mu_bar = r - std::log(out.lambda) / tau;
    const double mu = out.mu_bar;
    const double lk = std::log(S / K);
    out.threshold = -lk - mu * tau;
    out.regime = call_regime(q, out.threshold);
    auto N = [](double z) { return std_normal_cdf(z); };
    const double g1 = std::exp((mu + 0.5 * s1 * s1 - r) * tau);
    const double g2 = std::exp((mu + 0.5 * s2 * s2 - r) * tau);

    double psi1 = 0.0, psi2 = 0.0;
    switch (out.regime) {
        case 1:
            psi1 = T1 * g1 * std::exp(m1) * N((lk + (mu + s1 * s1) * tau + m1) / v1);
            psi2 = T1 * N((lk + mu * tau + m1) / v1);
            break;
        case 2: {
            const double inner =
                N((lk + (mu + s2 * s2) * tau) / v2) - N((-q + s2 * s2 * tau) / v2) +
                c2 * std::exp(2.0 * q) * (N((lk + (mu + s2 * s2) * tau + 2.0 * q) / v2) - N((q + s2 * s2 * tau) / v2));
            psi1 = g2 * inner + T1 * g1 * std::exp(m1) * N((-q + s1 * s2 * tau) / v2);
            psi2 = N((lk + mu * tau) / v2) + c1 * N(-(lk + mu * tau + 2.0 * q) / v2);
            break;
        }
        case 3:
            psi1 = g1 * N((lk + (mu + s1 * s1) * tau) / v1) +
                   c1 * g1 * std::exp(2.0 * q) * N((lk + (mu + s1 * s1) * tau + 2.0 * q) / v1);
            psi2 = N((lk + mu * tau) / v1) + c1 * N((lk + mu * tau + 2.0 * q) / v1);
            break;
        default:
            psi1 = T2 * g2 * std::exp(m2) * (N((lk + (mu + s2 * s2) * tau + m2) / v2) - N((-q + s1 * s2 * tau) / v1)) +
                   g1 * N((-q + s1 * s1 * tau) / v1) + c1 * g1 * std::exp(2.0 * q) * N((q + s1 * s1 * tau) / v1);
            psi2 = T2 * N((lk + mu * tau + m2) / v2) + c1;
            break;
    }
    double price = S * psi1 - K * terms.discount() * psi2;
    const double lower = std::max(S - K * terms.discount(), 0.0);
    if (price < lower - 1e-10 || price > S + 1e-10 || !std::isfinite(price)) {
        std::ostringstream msg;
        msg << "price_call: regime " << out.regime << " produced " << price << " outside [" << lower << ", " << S
            << "]";
        throw ConsistencyError(msg.str());
    }
    out.price = std::clamp(price, lower, S);
    return out;
}

inline double price_call(const PricingModel& model, const OptionTerms& terms) {
    return price_call_detail(model, terms).price;
}

/// Oracle: e^{-r tau} integral of (S e^{mu_bar tau + z} - K) against the
/// two-phase density over the exercise region.
inline double price_call_quadrature(const PricingModel& model, const OptionTerms& terms,
                                    QuadratureSpec spec = {1e-13, 1e-12, 4000}) {
    terms.validate();
    const TwoPhaseParams& p = model.params;
    const double S = terms.spot, K = terms.strike, tau = terms.tau();
    const double mu = drift_mu_bar(p, terms.rate, tau);
    const double z_star = std::log(K / S) - mu * tau;
    const double z_hi = two_phase_support(p, tau, 12.0).second;
    if (z_star >= z_hi) return 0.0;
    auto payoff = [&](double z) { return (std::exp(mu * tau + z) - K / S) * two_phase_pdf(p, z, tau); };
    const double v = integrate_piecewise(payoff, z_star, z_hi, {p.q}, spec).value;
    return S * terms.discount() * v;
}

}  // namespace multiphase
