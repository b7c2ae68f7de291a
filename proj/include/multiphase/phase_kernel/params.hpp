// SPDX-License-Identifier: MIT
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "multiphase/error.hpp"

namespace multiphase {

namespace detail {
inline void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << name << " must be finite and > 0 (got " << v << ")";
        throw DomainError(msg.str());
    }
}
inline void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        std::ostringstream msg;
        msg << "time must be finite and > 0 (got " << t << ")";
        throw DomainError(msg.str());
    }
}
}  // namespace detail

/// Two phases split at x = q: phase 1 occupies x > q with scale sigma1,
/// phase 2 occupies x < q with scale sigma2. The unit point source sits at 0.
struct TwoPhaseParams {
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double q = 0.0;

    void validate() const {
        detail::require_positive(sigma1, "sigma1");
        detail::require_positive(sigma2, "sigma2");
        if (!std::isfinite(q)) throw DomainError("q must be finite");
    }

    /// Same law reflected through x -> -x.
    TwoPhaseParams mirrored() const { return {sigma2, sigma1, -q}; }

    friend bool operator==(const TwoPhaseParams&, const TwoPhaseParams&) = default;
};

/// Three phases with the source in the middle one:
/// phase 1 on x > q1, phase 2 on (q2, q1), phase 3 on x < q2, and q1 > 0 > q2.
struct ThreePhaseParams {
    double sigma1 = 1.0;
    double sigma2 = 1.0;
    double sigma3 = 1.0;
    double q1 = 1.0;
    double q2 = -1.0;

    void validate() const {
        detail::require_positive(sigma1, "sigma1");
        detail::require_positive(sigma2, "sigma2");
        detail::require_positive(sigma3, "sigma3");
        if (!(q1 > 0.0) || !std::isfinite(q1)) throw DomainError("three-phase model requires q1 > 0");
        if (!(q2 < 0.0) || !std::isfinite(q2)) throw DomainError("three-phase model requires q2 < 0");
    }

    ThreePhaseParams mirrored() const { return {sigma3, sigma2, sigma1, -q2, -q1}; }

    friend bool operator==(const ThreePhaseParams&, const ThreePhaseParams&) = default;
};

/// General N-phase layout. Phases are numbered from the top: phase k
/// (0-based here) spans (boundaries[k], boundaries[k-1]) with the implicit
/// ends +inf and -inf. The Dirac source at x = 0 lies strictly inside
/// `source_phase()`.
class PhaseSystem {
public:
    PhaseSystem(std::vector<double> sigmas, std::vector<double> boundaries)
        : sigmas_(std::move(sigmas)), boundaries_(std::move(boundaries)) {
        if (sigmas_.empty()) throw DomainError("PhaseSystem: need at least one phase");
        if (boundaries_.size() + 1 != sigmas_.size()) {
            throw DomainError("PhaseSystem: need exactly N-1 boundaries for N phases");
        }
        for (double s : sigmas_) detail::require_positive(s, "PhaseSystem sigma");
        for (std::size_t k = 0; k < boundaries_.size(); ++k) {
            if (!std::isfinite(boundaries_[k])) throw DomainError("PhaseSystem: boundaries must be finite");
            if (k > 0 && !(boundaries_[k] < boundaries_[k - 1])) {
                throw DomainError("PhaseSystem: boundaries must be strictly decreasing");
            }
            if (boundaries_[k] == 0.0) {
                throw DomainError("PhaseSystem: the source at x = 0 may not sit on a boundary");
            }
        }
        source_ = static_cast<std::size_t>(
            std::count_if(boundaries_.begin(), boundaries_.end(), [](double b) { return b > 0.0; }));
    }

    static PhaseSystem from(const TwoPhaseParams& p) {
        p.validate();
        return PhaseSystem({p.sigma1, p.sigma2}, {p.q});
    }
    static PhaseSystem from(const ThreePhaseParams& p) {
        p.validate();
        return PhaseSystem({p.sigma1, p.sigma2, p.sigma3}, {p.q1, p.q2});
    }

    std::size_t phase_count() const noexcept { return sigmas_.size(); }
    const std::vector<double>& sigmas() const noexcept { return sigmas_; }
    const std::vector<double>& boundaries() const noexcept { return boundaries_; }
    std::size_t source_phase() const noexcept { return source_; }

    double max_sigma() const { return *std::max_element(sigmas_.begin(), sigmas_.end()); }
    double max_abs_boundary() const {
        double m = 0.0;
        for (double b : boundaries_) m = std::max(m, std::abs(b));
        return m;
    }
    bool uniform() const {
        return std::all_of(sigmas_.begin(), sigmas_.end(), [&](double s) { return s == sigmas_.front(); });
    }

    /// Phase containing x, with a point on a boundary assigned to the phase above it.
    std::size_t phase_of(double x) const {
        std::size_t k = 0;
        while (k < boundaries_.size() && x < boundaries_[k]) ++k;
        return k;
    }

private:
    std::vector<double> sigmas_;
    std::vector<double> boundaries_;
    std::size_t source_ = 0;
};

/// Shape statistics of a one-dimensional law. Kurtosis is not excess.
struct MomentSummary {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double kurtosis = 3.0;
};

}  // namespace multiphase
