// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "multiphase/numerics.hpp"
#include "multiphase/pde_oracle.hpp"
#include "multiphase/phase_kernel.hpp"

using namespace multiphase;

TEST(SolverGrid, ValidationAndRefinement) {
    const PhaseSystem sys({0.2, 0.3}, {-0.1});
    SolverGrid g = make_solver_grid(sys, 1.0);
    EXPECT_NO_THROW(g.validate(sys, 1.0));
    EXPECT_NEAR(std::remainder(-0.1 - g.x_min, g.dx()), 0.0, 1e-12);
    const SolverGrid r = g.refined();
    EXPECT_EQ(r.nx, 2 * g.nx);
    EXPECT_DOUBLE_EQ(r.dt, 0.5 * g.dt);
    SolverGrid small = g;
    small.nx = 100;
    EXPECT_THROW(small.validate(sys, 1.0), DomainError);
    SolverGrid narrow{-0.5, 0.5, 2001, 1e-4, 0.05};
    EXPECT_THROW(narrow.validate(sys, 1.0), DomainError);
    EXPECT_THROW(g.validate(sys, 0.01), DomainError);
}

TEST(SolveSystem, SinglePhaseHeatKernel) {
    const PhaseSystem sys({1.0}, {});
    const SolverGrid g{-10.0, 10.0, 2001, 1e-4, 0.05};
    const GridSolution sol = solve_system(sys, g, 1.0);
    const ClosedFormComparison c = compare_to_closed_form(sol, sys, -10.0, 10.0);
    EXPECT_LE(c.sup_abs_error, 1e-4);
    EXPECT_LE(sol.max_mass_drift, 1e-6);
    EXPECT_TRUE(sol.warm_start_exact);
}

TEST(SolveSystem, TwoPhaseAgainstClosedFormWithRefinement) {
    const PhaseSystem sys({0.2, 0.3}, {-0.1});
    const SolverGrid g = make_solver_grid(sys, 1.0, 2001, 1e-4);
    const GridSolution coarse = solve_system(sys, g, 1.0);
    const GridSolution fine = solve_system(sys, g.refined(), 1.0);
    const double e1 = compare_to_closed_form(coarse, sys, -1.0, 1.0).sup_rel_error;
    const double e2 = compare_to_closed_form(fine, sys, -1.0, 1.0).sup_rel_error;
    EXPECT_LE(e1, 1e-3);
    EXPECT_GE(e1 / e2, 3.0);
    EXPECT_LE(coarse.max_mass_drift, 1e-6);
    EXPECT_LE(coarse.max_snap_distance, 1e-12);
    EXPECT_NEAR(fine.at(0.0), two_phase_pdf({0.2, 0.3, -0.1}, 0.0, 1.0), 1e-3 * two_phase_pdf({0.2, 0.3, -0.1}, 0.0, 1.0));
}

TEST(SolveSystem, ThreePhaseAgainstSeries) {
    const PhaseSystem sys({0.2, 0.3, 0.25}, {0.4, -0.3});
    const GridSolution sol = solve_system(sys, make_solver_grid(sys, 1.0), 1.0);
    EXPECT_LE(compare_to_closed_form(sol, sys, -1.0, 1.0).sup_rel_error, 1e-3);
}

TEST(SolveSystem, GeneralLayoutConservesMass) {
    const PhaseSystem sys({0.2, 0.3, 0.25, 0.15}, {0.4, 0.1, -0.3});
    const GridSolution sol = solve_system(sys, make_solver_grid(sys, 1.0, 1001, 2e-4), 1.0);
    EXPECT_FALSE(sol.warm_start_exact);
    EXPECT_LE(sol.max_mass_drift, 1e-6);
    EXPECT_GE(sol.min_value(), -1e-10);
    EXPECT_THROW(compare_to_closed_form(sol, sys, -1.0, 1.0), DomainError);
}

TEST(ChapmanKolmogorov, FigureParameters) {
    const TwoPhaseParams p{0.2, 0.3, -0.1};
    std::vector<double> xs;
    for (double x = -1.0; x <= 1.0 + 1e-12; x += 0.1) xs.push_back(x);
    xs.push_back(p.q);
    for (auto [s, t] : {std::array{0.2, 1.0}, std::array{0.4, 1.0}, std::array{0.5, 2.0}, std::array{0.999, 1.0}}) {
        const auto rep = chapman_kolmogorov_check(p, s, t, xs);
        EXPECT_LE(rep.max_abs_error, 1e-4) << s << ' ' << t;
        EXPECT_EQ(rep.points, xs.size());
    }
    EXPECT_THROW(chapman_kolmogorov_check(p, 1.0, 1.0, xs), DomainError);
}

TEST(Identities, SymmetricErfc) {
    const IdentityCheck zero = check_symmetric_erfc_identity(0.0, 0.0, 2.0);
    EXPECT_NEAR(zero.lhs, std::numbers::pi, 1e-10);
    EXPECT_NEAR(zero.rhs, std::numbers::pi, 1e-15);
    EXPECT_NEAR(check_symmetric_erfc_identity(0.3, 0.5, 2.0).lhs, check_symmetric_erfc_identity(0.5, 0.3, 2.0).lhs,
                1e-12);
    EXPECT_LE(check_symmetric_erfc_identity(0.3, 0.5, 2.0).abs_error(), 1e-7);
}

TEST(Identities, ErfcKernel) {
    const IdentityCheck zero = check_erfc_kernel_identity(0.0, 0.045, 1.0);
    EXPECT_NEAR(zero.lhs, std::numbers::pi, 1e-10);
    EXPECT_NEAR(zero.rhs, std::numbers::pi, 1e-15);
    EXPECT_EQ(check_erfc_kernel_identity(0.2, 0.045, 1.0).lhs, check_erfc_kernel_identity(-0.2, 0.045, 1.0).lhs);
    EXPECT_LE(check_erfc_kernel_identity(0.2, 0.045, 1.0).abs_error(), 1e-7);
}

TEST(Identities, KernelIdentitiesRandomised) {
    RngState rng = RngState::from_seed(5);
    for (int i = 0; i < 20; ++i) {
        const double y = 0.6 * (rng.next_open01() - 0.5);
        const double q = 0.05 + 0.4 * rng.next_open01();
        const double a1 = 0.005 + 0.1 * rng.next_open01();
        const double a2 = 0.005 + 0.1 * rng.next_open01();
        const double t = 0.25 + 2.0 * rng.next_open01();
        const IdentityCheck two = check_two_scale_kernel_identity(y, q, a1, a2, t);
        EXPECT_LE(two.abs_error(), 1e-7 * std::max(1.0, std::abs(two.rhs)));
        const IdentityCheck one = check_gaussian_kernel_identity(y, q, a1, t);
        EXPECT_LE(one.abs_error(), 1e-7 * std::max(1.0, std::abs(one.rhs)));
    }
    EXPECT_THROW(check_two_scale_kernel_identity(0.1, 0.0, 0.1, 0.1, 1.0), DomainError);
}
