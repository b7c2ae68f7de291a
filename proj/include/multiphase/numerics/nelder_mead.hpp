// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace multiphase {

struct SimplexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead minimisation with the standard coefficients (1, 2, 1/2, 1/2).
/// `step` sets the initial simplex edge per coordinate. Stops when both the
/// spread of function values and the simplex extent (max-norm) drop below tol.
template <class F>
SimplexResult nelder_mead(const F& f, const Eigen::VectorXd& x0, const Eigen::VectorXd& step, double tol,
                          std::size_t max_evals) {
    const Eigen::Index k = x0.size();
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(k + 1), x0);
    std::vector<double> val(pts.size());
    SimplexResult out;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++out.evaluations;
        const double v = f(x);
        return std::isfinite(v) ? v : HUGE_VAL;
    };
    for (Eigen::Index i = 0; i < k; ++i) pts[static_cast<std::size_t>(i + 1)][i] += step[i];
    for (std::size_t i = 0; i < pts.size(); ++i) val[i] = eval(pts[i]);

    std::vector<std::size_t> order(pts.size());
    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];

        double extent = 0.0;
        for (std::size_t i : order) extent = std::max(extent, (pts[i] - pts[best]).cwiseAbs().maxCoeff());
        if (val[worst] - val[best] <= tol && extent <= tol) {
            out.converged = true;
            break;
        }
        if (out.evaluations >= max_evals) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
        for (std::size_t i : order)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(k);

        const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
        const double fr = eval(refl);
        if (fr < val[best]) {
            const Eigen::VectorXd exp = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = eval(exp);
            if (fe < fr) {
                pts[worst] = exp;
                val[worst] = fe;
            } else {
                pts[worst] = refl;
                val[worst] = fr;
            }
            continue;
        }
        if (fr < val[second]) {
            pts[worst] = refl;
            val[worst] = fr;
            continue;
        }
        const bool outside = fr < val[worst];
        const Eigen::VectorXd con =
            outside ? Eigen::VectorXd(centroid + 0.5 * (refl - centroid)) : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
        const double fc = eval(con);
        if (fc < (outside ? fr : val[worst])) {
            pts[worst] = con;
            val[worst] = fc;
            continue;
        }
        for (std::size_t i : order) {
            if (i == best) continue;
            pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
            val[i] = eval(pts[i]);
        }
    }
    const auto best = static_cast<std::size_t>(std::min_element(val.begin(), val.end()) - val.begin());
    out.x = pts[best];
    out.value = val[best];
    return out;
}

}  // namespace multiphase
