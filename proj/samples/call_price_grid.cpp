// SPDX-License-Identifier: MIT
// Call prices for sigma1 = 0.3, sigma2 = 0.4, q = -0.02 with Black-Scholes
// at the commensurate volatility alongside.
#include <cstdio>

#include "multiphase/pricing.hpp"

int main() {
    using namespace multiphase;
    const PricingModel model{{0.3, 0.4, -0.02}};
    const std::vector<double> strikes = StepRange{80.0, 115.0, 5.0}.values();
    const std::vector<int> days{17, 45, 80, 136, 227, 318};
    const auto rows = surface(model, strikes, days, OptionTerms::days(100.0, 100.0, 0.05, 17));
    std::printf("%5s %7s %10s %10s %8s\n", "days", "strike", "two-phase", "bs", "ivol");
    for (const auto& r : rows) {
        std::printf("%5d %7.1f %10.3f %10.3f %8.4f\n", r.tau_days, r.strike, r.price, r.bs_reference_price,
                    r.implied_vol);
    }
}
