// SPDX-License-Identifier: MIT
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "multiphase/io/format.hpp"
#include "multiphase/pde_oracle/solver.hpp"
#include "multiphase/phase_kernel/density_grid.hpp"
#include "multiphase/pricing/surface.hpp"

namespace multiphase::io {

// Every writer may prefix one '#' line with the resolved configuration.

inline void write_comment(std::ostream& os, const std::string& comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
}

inline void write_density_csv(std::ostream& os, const DensityTable& t, const std::string& comment = {}) {
    write_comment(os, comment);
    const bool normal = t.normal_density.has_value();
    os << "x,density" << (normal ? ",normal_density" : "") << '\n';
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        os << sig(t.x[i]) << ',' << sig(t.density[i]);
        if (normal) os << ',' << sig((*t.normal_density)[i]);
        os << '\n';
    }
}

inline void write_surface_csv(std::ostream& os, const std::vector<SurfaceRow>& rows, const std::string& comment = {}) {
    write_comment(os, comment);
    os << "tau_days,strike,price,bs_reference_price,implied_vol\n";
    for (const auto& r : rows) {
        os << r.tau_days << ',' << sig(r.strike) << ',' << fixed(r.price) << ',' << fixed(r.bs_reference_price) << ','
           << sig(r.implied_vol, 6) << '\n';
    }
}

inline void write_solution_csv(std::ostream& os, const GridSolution& s, const std::string& comment = {}) {
    write_comment(os, comment);
    os << "x,u\n";
    for (std::size_t i = 0; i < s.values.size(); ++i) os << sig(s.grid.center(i)) << ',' << sig(s.values[i]) << '\n';
}

/// Generic numeric table with a header.
inline void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                            const std::vector<std::vector<double>>& rows, const std::string& comment = {},
                            int digits = 12) {
    write_comment(os, comment);
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << sig(r[i], digits);
        os << '\n';
    }
}

}  // namespace multiphase::io
