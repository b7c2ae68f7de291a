// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "multiphase/error.hpp"

namespace multiphase {

/// Default central-difference step for coordinate value x.
inline double hessian_step(double x) { return std::max(1e-5, 1e-5 * std::abs(x)); }

/// Central-difference Hessian of f at x, symmetrized. A positive `step`
/// overrides the per-coordinate default max(1e-5, 1e-5 |x_i|).
template <class F>
Eigen::MatrixXd numerical_hessian(const F& f, const Eigen::VectorXd& x, double step = 0.0) {
    const Eigen::Index k = x.size();
    Eigen::VectorXd h(k);
    for (Eigen::Index i = 0; i < k; ++i) h[i] = step > 0.0 ? step : hessian_step(x[i]);

    auto eval = [&](const Eigen::VectorXd& p) {
        const double v = f(p);
        if (!std::isfinite(v)) throw NumericalError("numerical_hessian: non-finite function value");
        return v;
    };

    const double f0 = eval(x);
    Eigen::MatrixXd H(k, k);
    Eigen::VectorXd p = x;
    for (Eigen::Index i = 0; i < k; ++i) {
        p[i] = x[i] + h[i];
        const double fp = eval(p);
        p[i] = x[i] - h[i];
        const double fm = eval(p);
        p[i] = x[i];
        H(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (Eigen::Index j = 0; j < i; ++j) {
            double acc = 0.0;
            for (int si : {1, -1}) {
                for (int sj : {1, -1}) {
                    p[i] = x[i] + si * h[i];
                    p[j] = x[j] + sj * h[j];
                    acc += si * sj * eval(p);
                }
            }
            p[i] = x[i];
            p[j] = x[j];
            H(i, j) = H(j, i) = acc / (4.0 * h[i] * h[j]);
        }
    }
    return 0.5 * (H + H.transpose());
}

}  // namespace multiphase
