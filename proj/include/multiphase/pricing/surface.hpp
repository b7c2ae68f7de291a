// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "multiphase/error.hpp"
#include "multiphase/phase_kernel/two_phase.hpp"
#include "multiphase/pricing/black_scholes.hpp"
#include "multiphase/pricing/terms.hpp"
#include "multiphase/pricing/two_phase_call.hpp"

namespace multiphase {

/// Inclusive a:b with a fixed step.
struct StepRange {
    double a = 80.0;
    double b = 115.0;
    double step = 5.0;

    std::vector<double> values() const {
        if (!(step > 0.0) || !(b >= a)) throw DomainError("range a:b:step needs step > 0 and b >= a");
        const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = a + step * static_cast<double>(i);
        return out;
    }
};

struct SurfaceRow {
    int tau_days = 0;
    double strike = 0.0;
    double price = std::nan("");
    double bs_reference_price = std::nan("");
    double implied_vol = std::nan("");
    std::string error;  // empty when the row is complete
};

/// Volatility with the variance per unit time of Z_tau.
inline double commensurate_vol(const TwoPhaseParams& p, double tau) {
    return std::sqrt(two_phase_moments(p, tau).variance / tau);
}

/// One row per (tau, K) in input order. A failing cell keeps its message and
/// the rest of the grid is still produced.
inline std::vector<SurfaceRow> surface(const PricingModel& model, const std::vector<double>& strikes,
                                       const std::vector<int>& taus_days, const OptionTerms& base) {
    if (strikes.empty() || taus_days.empty()) throw DomainError("surface: empty strike or maturity grid");
    std::vector<SurfaceRow> rows;
    rows.reserve(strikes.size() * taus_days.size());
    for (int d : taus_days) {
        OptionTerms terms = base;
        terms.tau_days = d;
        terms.tau_years.reset();
        double ref_vol = std::nan("");
        std::string ref_error;
        try {
            terms.strike = strikes.front();
            terms.validate();
            ref_vol = commensurate_vol(model.params, terms.tau());
        } catch (const std::exception& e) {
            ref_error = e.what();
        }
        for (double K : strikes) {
            SurfaceRow row;
            row.tau_days = d;
            row.strike = K;
            terms.strike = K;
            try {
                row.price = price_call(model, terms);
                if (ref_error.empty()) {
                    row.bs_reference_price = black_scholes_call(terms.spot, K, terms.rate, ref_vol, terms.tau());
                } else {
                    row.error = ref_error;
                }
                row.implied_vol = implied_vol(row.price, terms.spot, K, terms.rate, terms.tau());
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace multiphase
