// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "multiphase/error.hpp"
#include "multiphase/inference/likelihood.hpp"
#include "multiphase/inference/returns.hpp"
#include "multiphase/numerics/hessian.hpp"
#include "multiphase/numerics/nelder_mead.hpp"

namespace multiphase {

struct FitConfig {
    double tol = 1e-8;
    std::size_t max_iter = 20000;  // function evaluations per simplex start
    bool demean = false;
    bool newton_polish = true;
    std::size_t max_newton_steps = 50;
    /// Difference step for the observed information, in standardized
    /// coordinates (log sigma, q / scale). The likelihood has a kink at every
    /// observation as q crosses it, so the step must span many of them.
    double information_step = 1e-2;

    void validate() const {
        if (!(tol > 0.0)) throw DomainError("FitConfig: tol must be > 0");
        if (max_iter == 0) throw DomainError("FitConfig: max_iter must be >= 1");
        if (!(information_step > 0.0)) throw DomainError("FitConfig: information_step must be > 0");
    }
};

struct Estimate {
    double value = 0.0;
    double se = std::numeric_limits<double>::quiet_NaN();
};

enum class StandardErrorStatus { ok, approximate, unavailable };

inline const char* to_string(StandardErrorStatus s) {
    switch (s) {
        case StandardErrorStatus::ok: return "ok";
        case StandardErrorStatus::approximate: return "approximate";
        default: return "unavailable";
    }
}

struct FitReport {
    Estimate sigma1_hat;
    Estimate sigma2_hat;
    Estimate q_hat;
    Estimate sigma_null_hat;
    double loglik_alt = 0.0;
    double loglik_null = 0.0;
    double lr = 0.0;
    double p_value = 1.0;
    std::size_t sample_size = 0;
    double t = 1.0;
    ReturnUnit unit = ReturnUnit::fraction;
    bool converged = false;
    StandardErrorStatus se_status = StandardErrorStatus::unavailable;
    std::size_t evaluations = 0;  // optimizer trace length
    std::size_t best_start = 0;
    std::size_t newton_steps = 0;

    TwoPhaseParams params() const { return {sigma1_hat.value, sigma2_hat.value, q_hat.value}; }
};

namespace detail {

// Standardized coordinates: theta = (log(sigma1/s0), log(sigma2/s0), q/scale)
// with s0 the null estimate and scale = s0 sqrt(t). This makes the optimizer
// path invariant under a change of units.
struct FitCoordinates {
    double s0;
    double scale;

    TwoPhaseParams to_params(const Eigen::Vector3d& th) const {
        return {s0 * std::exp(th[0]), s0 * std::exp(th[1]), scale * th[2]};
    }
};

}  // namespace detail

/// Maximum-likelihood fit of the two-phase law with the nested zero-mean
/// normal null. Simplex search from five starts, Newton polish restricted to
/// the sign of q found, standard errors from the observed information.
inline FitReport fit_two_phase(const ReturnSample& input, const FitConfig& cfg = {}) {
    cfg.validate();
    input.validate();
    if (input.values.size() < 10) throw DomainError("fit_two_phase: need at least 10 observations");
    ReturnSample data = input;
    if (cfg.demean) {
        double mean = 0.0;
        for (double v : data.values) mean += v;
        mean /= static_cast<double>(data.values.size());
        for (double& v : data.values) v -= mean;
    }
    const NullFit null = fit_normal_null(data);
    const SortedSample sorted(data);
    const detail::FitCoordinates co{null.sigma_hat, null.sigma_hat * std::sqrt(data.t)};
    auto loglik = [&](const Eigen::Vector3d& th) { return log_likelihood_two_phase(co.to_params(th), sorted); };

    FitReport rep;
    rep.sample_size = data.values.size();
    rep.t = data.t;
    rep.unit = data.unit;
    rep.loglik_null = null.loglik;
    rep.sigma_null_hat = {null.sigma_hat, null.sigma_hat / std::sqrt(2.0 * static_cast<double>(rep.sample_size))};

    // Stage 1: simplex from q in {+1, -1, +2, -2, 0} scale units.
    const std::array<double, 5> q_starts{1.0, -1.0, 2.0, -2.0, 0.0};
    const Eigen::Vector3d step(0.2, 0.2, 0.5);
    Eigen::Vector3d best = Eigen::Vector3d::Zero();
    double best_ll = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < q_starts.size(); ++s) {
        const Eigen::Vector3d x0(0.0, 0.0, q_starts[s]);
        auto r = nelder_mead([&](const Eigen::VectorXd& th) { return -loglik(th); }, x0, step, cfg.tol, cfg.max_iter);
        rep.evaluations += r.evaluations;
        if (-r.value > best_ll) {
            best_ll = -r.value;
            best = r.x;
            rep.best_start = s;
            rep.converged = r.converged;
        }
    }

    // Stage 2: Newton polish on the branch the simplex settled in.
    if (cfg.newton_polish && std::isfinite(best_ll)) {
        const bool upper_branch = best[2] > 0.0;
        auto same_branch = [&](const Eigen::Vector3d& th) { return (th[2] > 0.0) == upper_branch; };
        for (std::size_t it = 0; it < cfg.max_newton_steps; ++it) {
            Eigen::Vector3d g;
            for (int i = 0; i < 3; ++i) {
                const double h = 1e-6;
                Eigen::Vector3d a = best, b = best;
                a[i] += h;
                b[i] -= h;
                g[i] = (loglik(a) - loglik(b)) / (2.0 * h);
            }
            Eigen::Matrix3d H;
            try {
                H = numerical_hessian([&](const Eigen::VectorXd& th) { return loglik(th); }, Eigen::VectorXd(best),
                                      cfg.information_step);
            } catch (const NumericalError&) {
                break;  // a stencil point left the region where the likelihood is finite
            }
            const Eigen::LLT<Eigen::Matrix3d> llt(-H);
            if (llt.info() != Eigen::Success || !g.allFinite()) break;
            Eigen::Vector3d delta = llt.solve(g);
            bool moved = false;
            for (int half = 0; half < 30; ++half, delta *= 0.5) {
                const Eigen::Vector3d cand = best + delta;
                if (!same_branch(cand)) continue;
                const double ll = loglik(cand);
                if (ll >= best_ll) {
                    const double gain = ll - best_ll;
                    best = cand;
                    best_ll = ll;
                    moved = true;
                    ++rep.newton_steps;
                    if (delta.cwiseAbs().maxCoeff() < cfg.tol && gain < cfg.tol) moved = false;
                    break;
                }
            }
            if (!moved) break;
        }
    }

    const TwoPhaseParams fitted = co.to_params(best);
    rep.sigma1_hat.value = fitted.sigma1;
    rep.sigma2_hat.value = fitted.sigma2;
    rep.q_hat.value = fitted.q;
    rep.loglik_alt = best_ll;
    const LrResult lr = lr_test(rep.loglik_alt, rep.loglik_null);
    rep.lr = lr.lr;
    rep.p_value = lr.p_value;

    // Observed information in standardized coordinates, delta method back.
    try {
        const Eigen::Matrix3d H = numerical_hessian([&](const Eigen::VectorXd& th) { return loglik(th); },
                                                    Eigen::VectorXd(best), cfg.information_step);
        const Eigen::LLT<Eigen::Matrix3d> llt(-H);
        if (llt.info() == Eigen::Success) {
            const Eigen::Matrix3d cov = llt.solve(Eigen::Matrix3d::Identity());
            rep.sigma1_hat.se = fitted.sigma1 * std::sqrt(cov(0, 0));
            rep.sigma2_hat.se = fitted.sigma2 * std::sqrt(cov(1, 1));
            rep.q_hat.se = co.scale * std::sqrt(cov(2, 2));
            rep.se_status = sorted.distance_to_data(fitted.q) < 1e-6 * co.scale ? StandardErrorStatus::approximate
                                                                                 : StandardErrorStatus::ok;
        }
    } catch (const NumericalError&) {
        rep.se_status = StandardErrorStatus::unavailable;
    }
    return rep;
}

}  // namespace multiphase
