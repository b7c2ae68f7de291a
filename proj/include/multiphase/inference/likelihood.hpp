// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "multiphase/error.hpp"
#include "multiphase/inference/returns.hpp"
#include "multiphase/numerics/special.hpp"
#include "multiphase/phase_kernel/params.hpp"

namespace multiphase {

/// Observations sorted once, with prefix sums so the single-Gaussian side of
/// the likelihood costs O(log n) per evaluation.
class SortedSample {
public:
    explicit SortedSample(const ReturnSample& s) : t_(s.t), x_(s.values) {
        s.validate();
        std::sort(x_.begin(), x_.end());
        s1_.assign(x_.size() + 1, 0.0);
        s2_.assign(x_.size() + 1, 0.0);
        for (std::size_t i = 0; i < x_.size(); ++i) {
            s1_[i + 1] = s1_[i] + x_[i];
            s2_[i + 1] = s2_[i] + x_[i] * x_[i];
        }
    }

    double t() const noexcept { return t_; }
    std::size_t size() const noexcept { return x_.size(); }
    const std::vector<double>& sorted() const noexcept { return x_; }

    /// Index of the first observation >= q; observations at q belong to the upper phase.
    std::size_t split(double q) const {
        return static_cast<std::size_t>(std::lower_bound(x_.begin(), x_.end(), q) - x_.begin());
    }

    /// sum over [lo, hi) of (x - c)^2.
    double sum_sq_dev(std::size_t lo, std::size_t hi, double c) const {
        const double n = static_cast<double>(hi - lo);
        const double a = s1_[hi] - s1_[lo];
        const double b = s2_[hi] - s2_[lo];
        return b - 2.0 * c * a + n * c * c;
    }

    /// Distance from q to the nearest observation.
    double distance_to_data(double q) const {
        const std::size_t i = split(q);
        double d = std::numeric_limits<double>::infinity();
        if (i < x_.size()) d = std::min(d, x_[i] - q);
        if (i > 0) d = std::min(d, q - x_[i - 1]);
        return d;
    }

private:
    double t_;
    std::vector<double> x_;
    std::vector<double> s1_;
    std::vector<double> s2_;
};

namespace detail {

// log of [phi(x/s) + c phi((x - 2q)/s)] / s on the side where the image term
// is the smaller one, i.e. q (q - x) >= 0, so the log1p argument is in (-1, inf).
inline double log_mixture(double x, double q, double s, double c) {
    const double z = x / s;
    const double ratio = std::exp(-2.0 * q * (q - x) / (s * s));
    return -0.5 * z * z - std::log(std::sqrt(2.0 * std::numbers::pi) * s) + std::log1p(c * ratio);
}

}  // namespace detail

/// Two-phase log-likelihood in split form. For q > 0 the n observations at or
/// above q follow the transmitted Gaussian and the rest the two-term mixture;
/// for q <= 0 the roles swap. Returns -inf if a density underflows to zero.
inline double log_likelihood_two_phase(const TwoPhaseParams& p, const SortedSample& data) {
    p.validate();
    const double rt = std::sqrt(data.t());
    const double s1 = p.sigma1 * rt;
    const double s2 = p.sigma2 * rt;
    const double sum = p.sigma1 + p.sigma2;
    const double log_norm = std::log(std::sqrt(2.0 * std::numbers::pi));
    const auto& x = data.sorted();
    const std::size_t n = data.size();
    const std::size_t k = data.split(p.q);  // x[k..n) are in the upper phase
    double ll = 0.0;
    if (p.q > 0.0) {
        const double m1 = (1.0 - p.sigma1 / p.sigma2) * p.q;
        const double nu = static_cast<double>(n - k);
        ll += nu * (std::log(2.0 * p.sigma1 / sum) - log_norm - std::log(s1)) -
              data.sum_sq_dev(k, n, m1) / (2.0 * s1 * s1);
        const double c = (p.sigma2 - p.sigma1) / sum;
        for (std::size_t i = 0; i < k; ++i) ll += detail::log_mixture(x[i], p.q, s2, c);
    } else {
        const double m2 = (1.0 - p.sigma2 / p.sigma1) * p.q;
        const double nl = static_cast<double>(k);
        ll += nl * (std::log(2.0 * p.sigma2 / sum) - log_norm - std::log(s2)) -
              data.sum_sq_dev(0, k, m2) / (2.0 * s2 * s2);
        const double c = (p.sigma1 - p.sigma2) / sum;
        for (std::size_t i = k; i < n; ++i) ll += detail::log_mixture(x[i], p.q, s1, c);
    }
    if (std::isnan(ll)) return -std::numeric_limits<double>::infinity();
    return ll;
}

inline double log_likelihood_two_phase(const TwoPhaseParams& p, const ReturnSample& data) {
    return log_likelihood_two_phase(p, SortedSample(data));
}

struct NullFit {
    double sigma_hat = 0.0;
    double loglik = 0.0;
};

/// Zero-mean normal null: sigma_hat = sqrt(sum x^2 / (n t)).
inline NullFit fit_normal_null(const ReturnSample& data) {
    data.validate();
    double ss = 0.0;
    for (double v : data.values) ss += v * v;
    if (ss == 0.0) throw DomainError("fit_normal_null: degenerate sample (all observations are zero)");
    const double n = static_cast<double>(data.values.size());
    const double var = ss / n;  // of x, i.e. sigma^2 t
    NullFit out;
    out.sigma_hat = std::sqrt(var / data.t);
    out.loglik = -0.5 * n * (std::log(2.0 * std::numbers::pi * var) + 1.0);
    return out;
}

struct LrResult {
    double lr = 0.0;
    double p_value = 1.0;
};

/// Likelihood-ratio statistic against chi-square(1): p = erfc(sqrt(lr / 2)).
inline LrResult lr_test(double loglik_alt, double loglik_null) {
    if (!std::isfinite(loglik_alt) || !std::isfinite(loglik_null)) {
        throw DomainError("lr_test: log-likelihoods must be finite");
    }
    if (loglik_alt < loglik_null - 1e-6) {
        throw NestingError("lr_test: alternative log-likelihood is below the nested null by " +
                           std::to_string(loglik_null - loglik_alt) + "; the optimizer failed");
    }
    LrResult out;
    out.lr = std::max(0.0, 2.0 * (loglik_alt - loglik_null));
    out.p_value = erfc(std::sqrt(0.5 * out.lr));
    return out;
}

}  // namespace multiphase
