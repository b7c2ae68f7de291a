// SPDX-License-Identifier: MIT
#pragma once

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "multiphase/error.hpp"

namespace multiphase {

enum class ReturnUnit { fraction, percent };

inline const char* to_string(ReturnUnit u) { return u == ReturnUnit::percent ? "percent" : "fraction"; }

inline ReturnUnit parse_return_unit(const std::string& s) {
    if (s == "fraction") return ReturnUnit::fraction;
    if (s == "percent") return ReturnUnit::percent;
    throw DomainError("unit must be 'fraction' or 'percent' (got '" + s + "')");
}

/// Observed returns over a common horizon t. Values are stored in `unit`.
struct ReturnSample {
    std::vector<double> values;
    double t = 1.0;
    std::string label;
    ReturnUnit unit = ReturnUnit::fraction;

    std::size_t sample_size() const noexcept { return values.size(); }

    void validate() const {
        if (values.empty()) throw DomainError("ReturnSample: no observations");
        if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("ReturnSample: t must be finite and > 0");
        for (double v : values)
            if (!std::isfinite(v)) throw DomainError("ReturnSample: non-finite observation");
    }
};

struct LoadOptions {
    ReturnUnit unit = ReturnUnit::fraction;
    double t = 1.0;
    std::string label;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// Strict decimal parse: the whole field must be consumed and the value finite.
inline bool parse_finite(const std::string& s, double& out) {
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) return false;
    out = v;
    return true;
}

}  // namespace detail

/// Reads returns from CSV: either one numeric column, or a two-column
/// date,value layout whose second column holds the returns. Lines starting
/// with '#' are comments. A header is recognised when the first data line's
/// value field is not numeric. Blank lines and non-numeric or non-finite
/// values raise IngestionError listing every offending 1-based line.
inline ReturnSample load_returns(std::istream& in, const LoadOptions& opt = {}) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
    std::size_t first = 0;
    while (first < lines.size() && detail::trim(lines[first]).starts_with('#')) ++first;
    if (first == lines.size()) throw IngestionError("returns file is empty");

    const std::size_t columns = detail::split_fields(lines[first]).size();
    if (columns == 0 || columns > 2) throw IngestionError("expected one column or a date,value pair", {first + 1});
    ReturnSample out;
    out.t = opt.t;
    out.label = opt.label;
    out.unit = opt.unit;
    std::vector<std::size_t> bad;
    for (std::size_t i = first; i < lines.size(); ++i) {
        if (detail::trim(lines[i]).starts_with('#')) continue;
        const auto fields = detail::split_fields(lines[i]);
        double v = 0.0;
        if (fields.size() == columns && detail::parse_finite(fields.back(), v)) {
            out.values.push_back(v);
            continue;
        }
        if (i == first && fields.size() == columns && !detail::trim(lines[i]).empty()) continue;  // header
        bad.push_back(i + 1);
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "rejected " << bad.size() << " line(s):";
        for (std::size_t k = 0; k < bad.size() && k < 20; ++k) msg << ' ' << bad[k];
        if (bad.size() > 20) msg << " ...";
        throw IngestionError(msg.str(), bad);
    }
    if (out.values.empty()) throw IngestionError("no numeric values found");
    if (!(out.t > 0.0) || !std::isfinite(out.t)) throw DomainError("load_returns: t must be finite and > 0");
    return out;
}

inline ReturnSample load_returns(const std::string& path, const LoadOptions& opt = {}) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open returns file '" + path + "'");
    LoadOptions o = opt;
    if (o.label.empty()) o.label = path;
    return load_returns(in, o);
}

}  // namespace multiphase
