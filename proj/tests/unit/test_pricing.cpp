// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "multiphase/numerics.hpp"
#include "multiphase/phase_kernel.hpp"
#include "multiphase/pricing.hpp"

using namespace multiphase;

namespace {

const PricingModel kModel{{0.3, 0.4, -0.02}};
const std::vector<int> kTaus{17, 45, 80, 136, 227, 318};
const std::vector<double> kStrikes{80, 85, 90, 95, 100, 105, 110, 115};
const double kTable[6][8] = {{20.192, 15.252, 10.507, 6.304, 3.094, 1.157, 0.319, 0.065},
                             {20.673, 16.046, 11.801, 8.128, 5.173, 3.005, 1.586, 0.761},
                             {21.474, 17.166, 13.262, 9.860, 7.023, 4.775, 3.096, 1.918},
                             {22.838, 18.861, 15.258, 12.074, 9.335, 7.045, 5.191, 3.739},
                             {24.950, 21.294, 17.962, 14.970, 12.324, 10.023, 8.055, 6.402},
                             {26.882, 23.434, 20.271, 17.400, 14.821, 12.530, 10.516, 8.767}};

OptionTerms table_terms(double K, int days) { return OptionTerms::days(100.0, K, 0.05, days); }

}  // namespace

TEST(Lambda, GaussianAndLimits) {
    EXPECT_NEAR(lambda_normalizer({0.3, 0.3, 0.1}, 1.0), std::exp(0.045), 1e-9);
    EXPECT_NEAR(lambda_normalizer({0.3, 0.3, -0.1}, 1.0), std::exp(0.045), 1e-9);
    const double s2 = 0.4, t = 0.5;
    EXPECT_NEAR(lambda_normalizer({0.3, s2, 20 * s2 * std::sqrt(t)}, t), std::exp(0.5 * s2 * s2 * t), 1e-8);
    EXPECT_NEAR(lambda_normalizer({0.3, 0.4, 1e-8}, 0.5), lambda_normalizer({0.3, 0.4, -1e-8}, 0.5), 1e-9);
}

TEST(Lambda, MatchesQuadrature) {
    const TwoPhaseParams p{0.3, 0.4, -0.02};
    const double ref = integrate_piecewise([&](double z) { return std::exp(z) * two_phase_pdf(p, z, 0.25); }, -5.0,
                                           5.0, {p.q}, {1e-14, 1e-13, 4000})
                           .value;
    EXPECT_NEAR(lambda_normalizer(p, 0.25), ref, 1e-8);
}

TEST(Drift, GaussianAndMartingale) {
    EXPECT_NEAR(drift_mu_bar({0.3, 0.3, -0.02}, 0.05, 0.7), 0.005, 1e-12);
    EXPECT_NEAR(drift_mu_bar({1e-6, 1e-6, -0.02}, 0.0, 0.7), 0.0, 1e-10);
    const TwoPhaseParams p{0.3, 0.4, -0.02};
    const double tau = 80.0 / 365.0, r = 0.05;
    const double mu = drift_mu_bar(p, r, tau);
    const double e = integrate_piecewise([&](double z) { return std::exp(mu * tau + z) * two_phase_pdf(p, z, tau); },
                                         -5.0, 5.0, {p.q}, {1e-14, 1e-13, 4000})
                         .value;
    EXPECT_NEAR(std::exp(-r * tau) * e, 1.0, 1e-8);
}

TEST(PriceCall, ReferenceCells) {
    EXPECT_NEAR(price_call(kModel, table_terms(80, 17)), 20.192, 1e-3);
    EXPECT_NEAR(price_call(kModel, table_terms(100, 17)), 3.094, 1e-3);
    EXPECT_NEAR(price_call(kModel, table_terms(115, 318)), 8.767, 1e-3);
}

TEST(PriceCall, ReferenceGrid) {
    for (std::size_t i = 0; i < kTaus.size(); ++i)
        for (std::size_t j = 0; j < kStrikes.size(); ++j)
            EXPECT_NEAR(price_call(kModel, table_terms(kStrikes[j], kTaus[i])), kTable[i][j], 1e-3)
                << kTaus[i] << ' ' << kStrikes[j];
}

TEST(PriceCall, GaussianReductionToBlackScholes) {
    const PricingModel flat{{0.3, 0.3, -0.02}};
    for (int d : kTaus)
        for (double K : kStrikes) {
            const OptionTerms t = table_terms(K, d);
            EXPECT_NEAR(price_call(flat, t), black_scholes_call(100.0, K, 0.05, 0.3, t.tau()), 1e-10);
        }
}

TEST(PriceCall, AllRegimesMatchQuadrature) {
    // m = ln(K/S) - mu tau; pick q on either side of m for both signs of q.
    const struct {
        double q, K;
        int regime;
    } cases[] = {{0.02, 120.0, 1}, {0.05, 90.0, 2}, {-0.05, 100.0, 3}, {-0.02, 70.0, 4}};
    for (const auto& c : cases) {
        const PricingModel m{{0.3, 0.4, c.q}};
        const OptionTerms t = OptionTerms::years(100.0, c.K, 0.05, 0.25);
        const CallQuote quote = price_call_detail(m, t);
        EXPECT_EQ(quote.regime, c.regime);
        EXPECT_NEAR(quote.price, price_call_quadrature(m, t), 1e-6) << c.regime;
    }
}

TEST(PriceCall, RegimeSeamContinuity) {
    const TwoPhaseParams p{0.3, 0.4, 0.03};
    const double tau = 0.3, r = 0.05, S = 100.0;
    const double mu = drift_mu_bar(p, r, tau);
    const double K_seam = S * std::exp(p.q + mu * tau);
    const double a = price_call({p}, OptionTerms::years(S, K_seam * (1 - 1e-12), r, tau));
    const double b = price_call({p}, OptionTerms::years(S, K_seam * (1 + 1e-12), r, tau));
    EXPECT_NEAR(a, b, 1e-6);
    const double lo = price_call({{0.3, 0.4, -1e-9}}, OptionTerms::years(S, 95.0, r, tau));
    const double hi = price_call({{0.3, 0.4, 1e-9}}, OptionTerms::years(S, 95.0, r, tau));
    EXPECT_NEAR(lo, hi, 1e-6);
}

TEST(PriceCallQuadrature, LimitsAndTable) {
    EXPECT_NEAR(price_call_quadrature({{0.3, 0.3, 0.1}}, OptionTerms::years(100.0, 100.0, 0.05, 0.25)),
                black_scholes_call(100.0, 100.0, 0.05, 0.3, 0.25), 1e-8);
    EXPECT_NEAR(price_call_quadrature(kModel, OptionTerms::years(100.0, 1e-9, 0.05, 0.25)), 100.0, 1e-6);
    for (int d : kTaus)
        for (double K : kStrikes)
            EXPECT_NEAR(price_call_quadrature(kModel, table_terms(K, d)), price_call(kModel, table_terms(K, d)), 1e-6);
}

TEST(BlackScholes, Limits) {
    EXPECT_DOUBLE_EQ(black_scholes_call(100.0, 90.0, 0.05, 0.0, 0.5), 100.0 - 90.0 * std::exp(-0.025));
    EXPECT_DOUBLE_EQ(black_scholes_call(100.0, 110.0, 0.05, 0.0, 0.5), 0.0);
    EXPECT_NEAR(black_scholes_call(100.0, 1e-9, 0.05, 0.3, 0.5), 100.0, 1e-6);
    EXPECT_THROW(black_scholes_call(100.0, 100.0, 0.05, -0.1, 0.5), DomainError);
}

TEST(ImpliedVol, RoundTripAndBounds) {
    const double c = black_scholes_call(100.0, 95.0, 0.05, 0.35, 0.4);
    EXPECT_NEAR(implied_vol(c, 100.0, 95.0, 0.05, 0.4), 0.35, 1e-8);
    const double tau = 80.0 / 365.0;
    const double iv = implied_vol(13.262, 100.0, 90.0, 0.05, tau);
    EXPECT_NEAR(black_scholes_call(100.0, 90.0, 0.05, iv, tau), 13.262, 1e-9);
    EXPECT_THROW(implied_vol(100.0, 100.0, 90.0, 0.05, tau), DomainError);
    EXPECT_THROW(implied_vol(1.0, 100.0, 90.0, 0.05, tau), DomainError);
}

TEST(PutFromParity, DeepStrike) {
    EXPECT_NEAR(put_from_parity(100.0, 100.0, 1e-9, 0.05, 0.5), 0.0, 1e-6);
    const double c = black_scholes_call(100.0, 95.0, 0.05, 0.3, 0.5);
    const double put_bs = c - 100.0 + 95.0 * std::exp(-0.025);
    EXPECT_DOUBLE_EQ(put_from_parity(c, 100.0, 95.0, 0.05, 0.5), put_bs);
}

TEST(Terms, Validation) {
    EXPECT_THROW(parse_day_count(360), DomainError);
    EXPECT_EQ(parse_day_count(252), DayCount::trading252);
    OptionTerms t = table_terms(100.0, 17);
    t.tau_years = 0.1;
    EXPECT_THROW(t.validate(), DomainError);
    EXPECT_THROW(table_terms(100.0, 0).validate(), DomainError);
    EXPECT_THROW(OptionTerms::days(-1.0, 100.0, 0.05, 17).validate(), DomainError);
    EXPECT_DOUBLE_EQ(OptionTerms::days(100.0, 100.0, 0.05, 63, DayCount::trading252).tau(), 0.25);
}

TEST(Surface, ReferenceGridAndFlat) {
    const auto rows = surface(kModel, kStrikes, kTaus, table_terms(100.0, 17));
    ASSERT_EQ(rows.size(), 48u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_TRUE(rows[i].error.empty()) << rows[i].error;
        EXPECT_NEAR(rows[i].price, kTable[i / 8][i % 8], 1e-3);
    }
    EXPECT_GT(rows[0].implied_vol, rows[7].implied_vol);
    const double iv80 = implied_vol(price_call_quadrature(kModel, table_terms(80, 17)), 100.0, 80.0, 0.05, 17.0 / 365);
    EXPECT_NEAR(rows[0].implied_vol, iv80, 1e-6);

    const auto flat = surface({{0.3, 0.3, -0.02}}, kStrikes, kTaus, table_terms(100.0, 17));
    for (const auto& r : flat) {
        EXPECT_NEAR(r.implied_vol, 0.3, 1e-8);
        EXPECT_NEAR(r.price, r.bs_reference_price, 1e-8);
    }
}

TEST(Surface, StepRange) {
    EXPECT_EQ((StepRange{80, 115, 5}.values()), kStrikes);
    EXPECT_THROW((StepRange{80, 70, 5}.values()), DomainError);
}
