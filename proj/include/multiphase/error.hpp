// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace multiphase {

/// Invalid model parameters or arguments outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Base class for failures of a numerical procedure on valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double estimate, double error_estimate)
        : NumericalError(what), estimate_(estimate), error_estimate_(error_estimate) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

/// Root finder called on an interval that does not bracket a sign change.
class BracketError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A computed quantity violated an invariant that holds analytically
/// (negative density beyond truncation tolerance, price outside no-arbitrage
/// bounds). Indicates a bug rather than bad input.
class ConsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// PDE solve whose mass drifted beyond tolerance.
class SolverError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Likelihood-ratio inputs where the nested null beats the alternative.
class NestingError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Returns file could not be parsed. `lines()` lists offending 1-based lines.
class IngestionError : public std::runtime_error {
public:
    IngestionError(const std::string& what, std::vector<std::size_t> lines = {})
        : std::runtime_error(what), lines_(std::move(lines)) {}

    const std::vector<std::size_t>& lines() const noexcept { return lines_; }

private:
    std::vector<std::size_t> lines_;
};

}  // namespace multiphase
