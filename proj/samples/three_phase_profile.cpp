// SPDX-License-Identifier: MIT
// Three-phase density from the image series next to a Crank-Nicolson solve,
// plus the interface fluxes.
#include <cstdio>

#include "multiphase/pde_oracle.hpp"
#include "multiphase/phase_kernel.hpp"

int main() {
    using namespace multiphase;
    const ThreePhaseParams p{0.2, 0.3, 0.25, 0.4, -0.3};
    const double t = 1.0;
    const PhaseSystem sys = PhaseSystem::from(p);
    const GridSolution sol = solve_system(sys, make_solver_grid(sys, t), t);
    std::printf("x,closed_form,pde\n");
    for (int i = 0; i <= 40; ++i) {
        const double x = -1.0 + 0.05 * i;
        std::printf("%.2f,%.10f,%.10f\n", x, three_phase_pdf(p, x, t), sol.at(x));
    }
    const InterfaceFlux f = three_phase_interface_flux(p, t);
    std::fprintf(stderr, "flux at q1 %.10f, at q2 %.10f, mass %.12f\n", f.upper, f.lower, sol.mass);
}
