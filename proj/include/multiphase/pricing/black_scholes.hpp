// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multiphase/error.hpp"
#include "multiphase/numerics/roots.hpp"
#include "multiphase/numerics/special.hpp"

namespace multiphase {

inline double black_scholes_call(double S, double K, double r, double sigma, double tau) {
    if (!(sigma >= 0.0) || !(tau > 0.0)) throw DomainError("black_scholes_call: need sigma >= 0 and tau > 0");
    const double df = std::exp(-r * tau);
    if (sigma == 0.0) return std::max(S - K * df, 0.0);
    const double sd = sigma * std::sqrt(tau);
    const double d1 = (std::log(S / K) + r * tau) / sd + 0.5 * sd;
    return S * std_normal_cdf(d1) - K * df * std_normal_cdf(d1 - sd);
}

/// Black-Scholes implied volatility on [1e-6, 5]. The price must lie strictly
/// inside the no-arbitrage bounds ((S - K e^{-r tau})^+, S).
inline double implied_vol(double price, double S, double K, double r, double tau) {
    const double lower = std::max(S - K * std::exp(-r * tau), 0.0);
    if (!(price > lower && price < S)) {
        std::ostringstream msg;
        msg << "implied_vol: price " << price << " outside the open no-arbitrage interval (" << lower << ", " << S
            << ")";
        throw DomainError(msg.str());
    }
    auto f = [&](double s) { return black_scholes_call(S, K, r, s, tau) - price; };
    try {
        return find_root_bracketed(f, 1e-6, 5.0, 1e-15);
    } catch (const BracketError&) {
        std::ostringstream msg;
        msg << "implied_vol: price " << price << " is not attained for sigma in [1e-6, 5]";
        throw DomainError(msg.str());
    }
}

/// European put from put-call parity.
inline double put_from_parity(double call_price, double S, double K, double r, double tau) {
    return call_price - S + K * std::exp(-r * tau);
}

}  // namespace multiphase
