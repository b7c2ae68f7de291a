// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "multiphase/error.hpp"

namespace multiphase {

/// Bracketed root of a continuous f on [lo, hi] (TOMS 748). Stops once the
/// bracket is narrower than tol. Throws BracketError when f(lo) and f(hi)
/// share a strict sign.
template <class F>
double find_root_bracketed(const F& f, double lo, double hi, double tol, std::uintmax_t max_iter = 200) {
    if (!(tol > 0.0)) throw DomainError("find_root_bracketed: tol must be > 0");
    if (lo > hi) std::swap(lo, hi);
    const double flo = f(lo);
    const double fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi)) {
        throw BracketError("find_root_bracketed: non-finite value at bracket end");
    }
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream msg;
        msg << "find_root_bracketed: f(" << lo << ") = " << flo << " and f(" << hi << ") = " << fhi
            << " do not bracket a root";
        throw BracketError(msg.str());
    }
    auto done = [tol](double a, double b) { return std::abs(b - a) <= tol; };
    std::uintmax_t iters = max_iter;
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, iters);
    if (iters >= max_iter && !done(a, b)) {
        throw NumericalError("find_root_bracketed: iteration limit reached");
    }
    return 0.5 * (a + b);
}

}  // namespace multiphase
