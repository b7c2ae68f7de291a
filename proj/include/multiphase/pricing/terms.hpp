// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "multiphase/error.hpp"
#include "multiphase/phase_kernel/params.hpp"

namespace multiphase {

enum class DayCount { calendar365 = 365, trading252 = 252 };

inline double days_per_year(DayCount d) { return static_cast<double>(static_cast<int>(d)); }

inline DayCount parse_day_count(int days) {
    if (days == 365) return DayCount::calendar365;
    if (days == 252) return DayCount::trading252;
    throw DomainError("day count must be 365 or 252 (got " + std::to_string(days) + ")");
}

/// European option terms. Give exactly one of tau_days or tau_years; days
/// are converted with `day_count`.
struct OptionTerms {
    double spot = 100.0;
    double strike = 100.0;
    double rate = 0.0;
    std::optional<int> tau_days;
    std::optional<double> tau_years;
    DayCount day_count = DayCount::calendar365;

    static OptionTerms days(double S, double K, double r, int d, DayCount dc = DayCount::calendar365) {
        return {S, K, r, d, std::nullopt, dc};
    }
    static OptionTerms years(double S, double K, double r, double tau) { return {S, K, r, std::nullopt, tau}; }

    void validate() const {
        detail::require_positive(spot, "spot");
        detail::require_positive(strike, "strike");
        if (!std::isfinite(rate)) throw DomainError("rate must be finite");
        if (tau_days.has_value() == tau_years.has_value()) {
            throw DomainError("OptionTerms: set exactly one of tau_days and tau_years");
        }
        if (tau_days && *tau_days < 0) throw DomainError("tau_days must be >= 0");
        if (!(tau() > 0.0) || !std::isfinite(tau())) throw DomainError("time to expiry must be > 0");
    }

    double tau() const { return tau_days ? static_cast<double>(*tau_days) / days_per_year(day_count) : *tau_years; }
    double discount() const { return std::exp(-rate * tau()); }
};

}  // namespace multiphase
