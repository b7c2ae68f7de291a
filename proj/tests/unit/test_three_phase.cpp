// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>

#include "multiphase/numerics.hpp"
#include "multiphase/pde_oracle.hpp"
#include "multiphase/phase_kernel.hpp"

using namespace multiphase;

namespace {
const ThreePhaseParams kSlab{0.2, 0.3, 0.25, 0.4, -0.3};
}

TEST(ThreePhasePdf, EqualSigmaIsGaussian) {
    for (double s : {0.1, 0.3, 1.0}) {
        const ThreePhaseParams p{s, s, s, 0.4, -0.3};
        EXPECT_NEAR(three_phase_pdf(p, 0.1, 1.0), normal_pdf(0.1, 0.0, s), 1e-8);
        EXPECT_NEAR(three_phase_pdf(p, 0.7, 2.0), normal_pdf(0.7, 0.0, s * std::sqrt(2.0)), 1e-8);
    }
}

TEST(ThreePhasePdf, DomainErrors) {
    EXPECT_THROW(three_phase_pdf(kSlab, 0.0, 0.0), DomainError);
    EXPECT_THROW(three_phase_pdf({0.2, 0.3, 0.25, 0.0, -0.3}, 0.0, 1.0), DomainError);
    EXPECT_THROW(three_phase_pdf({0.2, 0.3, 0.25, 0.4, 0.0}, 0.0, 1.0), DomainError);
    EXPECT_THROW(three_phase_pdf(kSlab, 0.0, 1.0, SeriesControl{0.0}), DomainError);
}

TEST(ThreePhasePdf, ContinuityAtBothInterfaces) {
    for (double t : {0.25, 1.0, 4.0}) {
        EXPECT_NEAR(three_phase_phase_density(kSlab, 1, kSlab.q1, t), three_phase_phase_density(kSlab, 2, kSlab.q1, t),
                    1e-12);
        EXPECT_NEAR(three_phase_phase_density(kSlab, 2, kSlab.q2, t), three_phase_phase_density(kSlab, 3, kSlab.q2, t),
                    1e-12);
    }
}

TEST(ThreePhasePdf, FluxContinuityAtBothInterfaces) {
    const double h = 1e-5, t = 1.0;
    auto d = [&](int phase, double x) {
        auto u = [&](double y) { return three_phase_phase_density(kSlab, phase, y, t); };
        return (u(x - 2 * h) - 8 * u(x - h) + 8 * u(x + h) - u(x + 2 * h)) / (12 * h);
    };
    EXPECT_NEAR(kSlab.sigma1 * kSlab.sigma1 * d(1, kSlab.q1), kSlab.sigma2 * kSlab.sigma2 * d(2, kSlab.q1), 2e-6);
    EXPECT_NEAR(kSlab.sigma3 * kSlab.sigma3 * d(3, kSlab.q2), kSlab.sigma2 * kSlab.sigma2 * d(2, kSlab.q2), 2e-6);
}

TEST(ThreePhasePdf, Normalisation) {
    for (double t : {0.25, 1.0, 5.0}) {
        const double mass = integrate_piecewise([&](double x) { return three_phase_pdf(kSlab, x, t); }, -8.0, 8.0,
                                                {kSlab.q2, kSlab.q1}, {1e-13, 1e-12, 4000})
                                .value;
        EXPECT_NEAR(mass, 1.0, 1e-8) << t;
    }
}

TEST(ThreePhasePdf, MirrorSymmetry) {
    for (double x : {-1.0, -0.3, 0.0, 0.2, 0.4, 0.9}) {
        EXPECT_NEAR(three_phase_pdf(kSlab, x, 1.0), three_phase_pdf(kSlab.mirrored(), -x, 1.0), 1e-12);
    }
}

TEST(ThreePhasePdf, FarInterfacesReduceToTwoPhase) {
    const double t = 1.0;
    const ThreePhaseParams p{0.2, 0.3, 0.25, 0.4, -40.0};
    const TwoPhaseParams two{0.2, 0.3, 0.4};
    for (double x : {-0.8, 0.0, 0.39, 0.41, 1.0}) EXPECT_NEAR(three_phase_pdf(p, x, t), two_phase_pdf(two, x, t), 1e-12);
}

TEST(ThreePhaseCdf, MatchesQuadratureAndSaturates) {
    for (double x : {-0.9, -0.3, 0.0, 0.2, 0.4, 1.1}) {
        const double ref = integrate_piecewise([&](double y) { return three_phase_pdf(kSlab, y, 1.0); }, -8.0, x,
                                               {kSlab.q2, kSlab.q1}, {1e-13, 1e-12, 4000})
                               .value;
        EXPECT_NEAR(three_phase_cdf(kSlab, x, 1.0), ref, 1e-10) << x;
    }
    EXPECT_GE(three_phase_cdf(kSlab, 5.0, 1.0), 1.0 - 1e-12);
    EXPECT_LE(three_phase_cdf(kSlab, -5.0, 1.0), 1e-12);
}

TEST(ThreePhaseFlux, SymmetricConfiguration) {
    const ThreePhaseParams p{0.2, 0.3, 0.2, 0.4, -0.4};
    for (double t : {0.25, 1.0, 4.0}) {
        const InterfaceFlux f = three_phase_interface_flux(p, t);
        EXPECT_NEAR(f.upper, -f.lower, 1e-10);
    }
}

TEST(ThreePhaseFlux, MatchesOneSidedDifferences) {
    for (double t : {0.25, 1.0, 4.0}) {
        const InterfaceFlux f = three_phase_interface_flux(kSlab, t);
        const InterfaceFlux fd = three_phase_flux_finite_difference(kSlab, t);
        EXPECT_NEAR(f.upper, fd.upper, 1e-5) << t;
        EXPECT_NEAR(f.lower, fd.lower, 1e-5) << t;
    }
}

TEST(ThreePhaseFlux, MassBalance) {
    // d/dt of the mass above q1 equals minus the upper flux.
    const double t = 1.0, h = 1e-4;
    const double above = [&] {
        auto m = [&](double s) { return 1.0 - three_phase_cdf(kSlab, kSlab.q1, s); };
        return (m(t + h) - m(t - h)) / (2 * h);
    }();
    EXPECT_NEAR(above, -three_phase_interface_flux(kSlab, t).upper, 1e-7);
}

TEST(ThreePhaseMoments, GaussianAndMirror) {
    const MomentSummary g = three_phase_moments({0.3, 0.3, 0.3, 0.4, -0.3}, 1.0);
    EXPECT_NEAR(g.skewness, 0.0, 1e-8);
    EXPECT_NEAR(g.kurtosis, 3.0, 1e-6);
    const MomentSummary a = three_phase_moments(kSlab, 1.0);
    const MomentSummary b = three_phase_moments(kSlab.mirrored(), 1.0);
    EXPECT_NEAR(a.mean, -b.mean, 1e-10);
    EXPECT_NEAR(a.skewness, -b.skewness, 1e-8);
    EXPECT_NEAR(a.kurtosis, b.kurtosis, 1e-8);
}

TEST(ThreePhaseDensityGrid, ClosedFormRows) {
    const DensityTable tab = density_grid(kSlab, 1.0, LinearGrid{-1.0, 1.0, 201});
    EXPECT_FALSE(tab.numerical);
    for (std::size_t i = 0; i < tab.x.size(); ++i) EXPECT_EQ(tab.density[i], three_phase_pdf(kSlab, tab.x[i], 1.0));
}
