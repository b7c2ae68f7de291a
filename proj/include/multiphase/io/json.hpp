// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>

#include <json.hpp>

#include "multiphase/inference/fit.hpp"
#include "multiphase/numerics/rng.hpp"
#include "multiphase/pde_oracle/solver.hpp"
#include "multiphase/phase_kernel/params.hpp"
#include "multiphase/pricing/terms.hpp"
#include "multiphase/pricing/two_phase_call.hpp"

namespace multiphase::io {

using json = nlohmann::ordered_json;

/// NaN has no JSON spelling; it becomes null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const TwoPhaseParams& p) { return {{"sigma1", p.sigma1}, {"sigma2", p.sigma2}, {"q", p.q}}; }

inline json to_json(const ThreePhaseParams& p) {
    return {{"sigma1", p.sigma1}, {"sigma2", p.sigma2}, {"sigma3", p.sigma3}, {"q1", p.q1}, {"q2", p.q2}};
}

inline json to_json(const PhaseSystem& s) { return {{"sigmas", s.sigmas()}, {"boundaries", s.boundaries()}}; }

inline json to_json(const MomentSummary& m) {
    return {{"mean", m.mean}, {"variance", m.variance}, {"skewness", m.skewness}, {"kurtosis", m.kurtosis}};
}

inline json to_json(const Estimate& e) { return {{"value", number(e.value)}, {"se", number(e.se)}}; }

inline json to_json(const FitReport& r) {
    return {{"sigma1_hat", to_json(r.sigma1_hat)},
            {"sigma2_hat", to_json(r.sigma2_hat)},
            {"q_hat", to_json(r.q_hat)},
            {"sigma_null_hat", to_json(r.sigma_null_hat)},
            {"loglik_alt", number(r.loglik_alt)},
            {"loglik_null", number(r.loglik_null)},
            {"lr", r.lr},
            {"p_value", r.p_value},
            {"sample_size", r.sample_size},
            {"t", r.t},
            {"unit", to_string(r.unit)},
            {"converged", r.converged},
            {"standard_errors", to_string(r.se_status)},
            {"optimizer_evaluations", r.evaluations},
            {"newton_steps", r.newton_steps}};
}

inline json to_json(const OptionTerms& t) {
    json j{{"spot", t.spot}, {"strike", t.strike}, {"rate", t.rate}};
    if (t.tau_days) j["tau_days"] = *t.tau_days;
    if (t.tau_years) j["tau_years"] = *t.tau_years;
    j["day_count"] = static_cast<int>(t.day_count);
    j["tau"] = t.tau();
    return j;
}

inline json to_json(const CallQuote& q) {
    return {{"regime", q.regime}, {"price", q.price}, {"mu_bar", q.mu_bar}, {"lambda", q.lambda},
            {"threshold", q.threshold}};
}

inline json to_json(const SolverGrid& g) {
    return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx}, {"dx", g.dx()}, {"dt", g.dt}, {"t_warm", g.t_warm}};
}

inline json to_json(const RngState& s) { return {{"algorithm", to_string(s.algorithm)}, {"state", s.state}}; }

}  // namespace multiphase::io
