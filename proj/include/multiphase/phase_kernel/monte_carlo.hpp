// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "multiphase/error.hpp"
#include "multiphase/numerics/rng.hpp"
#include "multiphase/phase_kernel/params.hpp"
#include "multiphase/phase_kernel/two_phase.hpp"

namespace multiphase {

struct MonteCarloMoments {
    MomentSummary moments;
    double skewness_se = 0.0;
    double kurtosis_se = 0.0;
    std::size_t draws = 0;
    RngState rng;
};

namespace detail {
inline MomentSummary sample_moments(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    return {mean, m2, m3 / std::pow(m2, 1.5), m4 / (m2 * m2)};
}
}  // namespace detail

/// Moments from `draws` samples. Standard errors of skewness and kurtosis
/// come from `batches` equal batch means.
inline MonteCarloMoments two_phase_monte_carlo_moments(const TwoPhaseParams& p, double t, std::size_t draws,
                                                       RngState rng, std::size_t batches = 100) {
    if (batches < 2 || draws < 2 * batches) throw DomainError("monte carlo moments: need draws >= 2 * batches >= 4");
    MonteCarloMoments out;
    out.draws = draws;
    const std::size_t per = draws / batches;
    std::vector<double> all;
    all.reserve(per * batches);
    double sk = 0.0, sk2 = 0.0, ku = 0.0, ku2 = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
        SampleDraws d = two_phase_sample(p, t, per, rng);
        rng = d.rng;
        const MomentSummary m = detail::sample_moments(d.values);
        sk += m.skewness;
        sk2 += m.skewness * m.skewness;
        ku += m.kurtosis;
        ku2 += m.kurtosis * m.kurtosis;
        all.insert(all.end(), d.values.begin(), d.values.end());
    }
    const double B = static_cast<double>(batches);
    auto se = [&](double s, double s2) { return std::sqrt(std::max(0.0, s2 / B - (s / B) * (s / B)) / (B - 1.0)); };
    out.moments = detail::sample_moments(all);
    out.draws = all.size();
    out.skewness_se = se(sk, sk2);
    out.kurtosis_se = se(ku, ku2);
    out.rng = rng;
    return out;
}

}  // namespace multiphase
