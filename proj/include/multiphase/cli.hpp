// SPDX-License-Identifier: MIT
#pragma once

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multiphase/inference.hpp"
#include "multiphase/io/csv.hpp"
#include "multiphase/io/format.hpp"
#include "multiphase/io/json.hpp"
#include "multiphase/io/output.hpp"
#include "multiphase/numerics.hpp"
#include "multiphase/pde_oracle.hpp"
#include "multiphase/phase_kernel.hpp"
#include "multiphase/pricing.hpp"

namespace multiphase::cli {

#ifdef MULTIPHASE_VERSION
inline constexpr const char* kVersion = MULTIPHASE_VERSION;
#else
inline constexpr const char* kVersion = "0.0.0";
#endif

inline std::string version_string() {
    return std::string("multiphase ") + kVersion + " (rng " + std::string(to_string(RngAlgorithm::splitmix64)) + ")";
}

/// Bad or missing flags detected after CLI11 has parsed the line.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

using io::json;
inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

inline double to_double(const std::string& s, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
        throw UsageError(what + ": '" + s + "' is not a finite decimal number");
    }
    return v;
}

inline long to_integer(const std::string& s, const std::string& what) {
    const double v = to_double(s, what);
    if (v != std::floor(v) || std::abs(v) > 1e15) throw UsageError(what + ": '" + s + "' is not an integer");
    return static_cast<long>(v);
}

/// a:b:n with n inclusive points.
inline LinearGrid parse_linear_grid(const std::string& s, const std::string& what) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw UsageError(what + " must look like a:b:n");
    const long n = to_integer(parts[2], what);
    if (n < 1) throw UsageError(what + ": n must be >= 1");
    LinearGrid g{to_double(parts[0], what), to_double(parts[1], what), static_cast<std::size_t>(n)};
    try {
        g.validate();
    } catch (const DomainError& e) {
        throw UsageError(what + ": " + e.what());
    }
    return g;
}

/// a:b:step, inclusive of b when it falls on the step.
inline StepRange parse_step_range(const std::string& s, const std::string& what) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw UsageError(what + " must look like a:b:step");
    StepRange r{to_double(parts[0], what), to_double(parts[1], what), to_double(parts[2], what)};
    if (!(r.step > 0.0) || !(r.b >= r.a)) throw UsageError(what + ": need step > 0 and b >= a");
    return r;
}

inline std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    if (s.empty()) return out;
    for (const auto& p : split(s, ',')) out.push_back(to_double(p, what));
    return out;
}

inline std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    for (const auto& p : split(s, ',')) {
        const long v = to_integer(p, what);
        if (v < 0 || v > 1000000) throw UsageError(what + ": values must be in [0, 1e6]");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw UsageError(what + " must not be empty");
    return out;
}

struct ModelOptions {
    std::string model = "two-phase";
    double sigma1 = kUnset, sigma2 = kUnset, sigma3 = kUnset;
    double q = kUnset, q1 = kUnset, q2 = kUnset;
    std::string sigmas, boundaries;
    double t = 1.0;

    void add_to(CLI::App* sub, bool allow_three, bool allow_system, bool with_t = true) {
        std::vector<std::string> kinds{"two-phase"};
        if (allow_three) kinds.emplace_back("three-phase");
        if (allow_system) kinds.emplace_back("system");
        if (kinds.size() > 1) {
            sub->add_option("--model", model, "Model family")->check(CLI::IsMember(kinds))->capture_default_str();
        }
        sub->add_option("--sigma1", sigma1, "Scale of phase 1 (top)");
        sub->add_option("--sigma2", sigma2, "Scale of phase 2");
        sub->add_option("--q", q, "Two-phase interface position");
        if (allow_three) {
            sub->add_option("--sigma3", sigma3, "Scale of phase 3 (three-phase)");
            sub->add_option("--q1", q1, "Upper interface (three-phase, > 0)");
            sub->add_option("--q2", q2, "Lower interface (three-phase, < 0)");
        }
        if (allow_system) {
            sub->add_option("--sigmas", sigmas, "Comma-separated scales, top phase first (system)");
            sub->add_option("--boundaries", boundaries, "Comma-separated decreasing interfaces (system)");
        }
        if (with_t) sub->add_option("--t", t, "Horizon")->check(CLI::PositiveNumber)->capture_default_str();
    }

    static void need(double v, const char* flag, const std::string& model) {
        if (std::isnan(v)) throw UsageError(model + " model needs " + flag);
    }

    TwoPhaseParams two_phase() const {
        if (model != "two-phase") throw UsageError("this command supports only --model two-phase");
        need(sigma1, "--sigma1", model);
        need(sigma2, "--sigma2", model);
        need(q, "--q", model);
        TwoPhaseParams p{sigma1, sigma2, q};
        p.validate();
        return p;
    }

    ThreePhaseParams three_phase() const {
        need(sigma1, "--sigma1", model);
        need(sigma2, "--sigma2", model);
        need(sigma3, "--sigma3", model);
        need(q1, "--q1", model);
        need(q2, "--q2", model);
        ThreePhaseParams p{sigma1, sigma2, sigma3, q1, q2};
        p.validate();
        return p;
    }

    DensityModel resolve() const {
        if (model == "two-phase") return two_phase();
        if (model == "three-phase") return three_phase();
        if (sigmas.empty()) throw UsageError("system model needs --sigmas");
        return PhaseSystem(parse_double_list(sigmas, "--sigmas"), parse_double_list(boundaries, "--boundaries"));
    }

    json echo() const {
        const DensityModel m = resolve();
        json j{{"model", model}};
        std::visit([&](const auto& v) { j["params"] = io::to_json(v); }, m);
        j["t"] = t;
        return j;
    }
};

inline json header(const std::string& command) {
    return {{"command", command}, {"version", kVersion}};
}

struct Output {
    std::string body;
    bool passed = true;
};

inline RngState seeded(std::uint64_t seed, bool given, std::ostream& err) {
    if (!given) err << "notice: --seed not given; using seed 0\n";
    return RngState::from_seed(seed);
}

}  // namespace detail

/// Runs one command line (argv without the program name). Writes the result
/// to `out` or the --output file and diagnostics to `err`. Returns 0 on
/// success, 1 on usage errors, 2 on numerical or domain errors and when a
/// check-* command reports a failed check.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Multi-phase diffusion densities, fitting and option pricing.\n"
                 "Grids: x-grids are a:b:n (n inclusive points); strike grids are a:b:step.",
                 "multiphase"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);
    app.fallthrough(false);

    std::string output_path;
    std::uint64_t seed = 0;
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output,-o", output_path, "Write the result to this file instead of stdout");
    };
    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed, "Random seed (default 0)"); };

    // pdf / cdf
    ModelOptions pdf_m;
    std::string pdf_grid = "-1:1:401";
    bool no_normal = false;
    auto* pdf = app.add_subcommand("pdf", "Density on an x-grid (CSV)");
    pdf_m.add_to(pdf, true, true);
    pdf->add_option("--x-grid", pdf_grid, "x-grid a:b:n")->capture_default_str();
    pdf->add_flag("--no-normal", no_normal, "Omit the moment-matched normal density column");
    add_output(pdf);

    ModelOptions cdf_m;
    std::string cdf_grid = "-1:1:401";
    auto* cdf = app.add_subcommand("cdf", "Distribution function on an x-grid (CSV)");
    cdf_m.add_to(cdf, true, false);
    cdf->add_option("--x-grid", cdf_grid, "x-grid a:b:n")->capture_default_str();
    add_output(cdf);

    // moments
    ModelOptions mom_m;
    std::string q_grid;
    std::size_t mc_draws = 0;
    auto* mom = app.add_subcommand("moments", "Mean, variance, skewness, kurtosis (JSON, or CSV over --q-grid)");
    mom_m.add_to(mom, true, false);
    mom->add_option("--q-grid", q_grid, "Two-phase only: sweep q over a:b:n and emit CSV");
    mom->add_option("--mc-draws", mc_draws, "Also estimate skewness/kurtosis from this many draws");
    add_seed(mom);
    add_output(mom);

    // sample
    ModelOptions smp_m;
    std::size_t n_draws = 0;
    auto* smp = app.add_subcommand("sample", "Draws from the two-phase law (CSV)");
    smp_m.add_to(smp, false, false);
    smp->add_option("--n", n_draws, "Number of draws")->required();
    add_seed(smp);
    add_output(smp);

    // fit
    std::string fit_input, fit_unit = "fraction", fit_label;
    double fit_t = 1.0;
    bool fit_demean = false;
    FitConfig fit_cfg;
    auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit and normality LR test (JSON)");
    fit->add_option("--input", fit_input, "Returns CSV (one column or date,value)")->required();
    fit->add_option("--unit", fit_unit, "Unit of the returns")
        ->check(CLI::IsMember({"fraction", "percent"}))
        ->capture_default_str();
    fit->add_option("--t", fit_t, "Horizon per observation")->check(CLI::PositiveNumber)->capture_default_str();
    fit->add_flag("--demean", fit_demean, "Subtract the sample mean first");
    fit->add_option("--tol", fit_cfg.tol, "Convergence tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    fit->add_option("--label", fit_label, "Free-text label echoed in the report");
    add_output(fit);

    // price / surface
    ModelOptions prc_m;
    double spot = 100.0, strike = kUnset, rate = 0.0, tau_years = kUnset;
    int tau_days = -1, daycount = 365;
    auto* prc = app.add_subcommand("price", "European call under the two-phase law (JSON)");
    prc_m.add_to(prc, false, false, false);
    prc->add_option("--s", spot, "Spot")->check(CLI::PositiveNumber)->capture_default_str();
    prc->add_option("--k", strike, "Strike")->required()->check(CLI::PositiveNumber);
    prc->add_option("--r", rate, "Continuously compounded rate")->capture_default_str();
    auto* opt_days = prc->add_option("--tau-days", tau_days, "Days to expiry");
    auto* opt_years = prc->add_option("--tau-years", tau_years, "Years to expiry");
    opt_days->excludes(opt_years);
    prc->add_option("--daycount", daycount, "Days per year")->check(CLI::IsMember({365, 252}))->capture_default_str();
    add_output(prc);

    ModelOptions srf_m;
    std::string strikes = "80:115:5", taus = "17,45,80,136,227,318";
    double srf_spot = 100.0, srf_rate = 0.05;  // grid defaults reproduce the 48-cell call table
    int srf_daycount = 365;
    auto* srf = app.add_subcommand("surface", "Price and implied-vol surface (CSV)");
    srf_m.add_to(srf, false, false, false);
    srf->add_option("--s", srf_spot, "Spot")->check(CLI::PositiveNumber)->capture_default_str();
    srf->add_option("--r", srf_rate, "Continuously compounded rate")->capture_default_str();
    srf->add_option("--strikes", strikes, "Strike grid a:b:step")->capture_default_str();
    srf->add_option("--taus", taus, "Days to expiry, comma-separated")->capture_default_str();
    srf->add_option("--daycount", srf_daycount, "Days per year")
        ->check(CLI::IsMember({365, 252}))
        ->capture_default_str();
    add_output(srf);

    // check-pde
    ModelOptions pde_m;
    std::size_t pde_nx = 2001;
    double pde_dt = 1e-4, pde_warm = 0.05, pde_window = 1.0, pde_tol = 1e-3;
    std::string pde_solution;
    auto* pde = app.add_subcommand("check-pde", "Crank-Nicolson solve against the closed form (JSON)");
    pde_m.add_to(pde, true, true);
    pde->add_option("--nx", pde_nx, "Cells")->capture_default_str();
    pde->add_option("--dt", pde_dt, "Time step")->check(CLI::PositiveNumber)->capture_default_str();
    pde->add_option("--t-warm", pde_warm, "Warm-start time")->check(CLI::PositiveNumber)->capture_default_str();
    pde->add_option("--window", pde_window, "Compare on |x| <= window")->capture_default_str();
    pde->add_option("--tol", pde_tol, "Relative sup-error tolerance")->capture_default_str();
    pde->add_option("--solution", pde_solution, "Also write the solution as CSV x,u to this file");
    add_output(pde);

    // check-ck
    ModelOptions ck_m;
    double ck_s = 0.4, ck_tol = 1e-4;
    std::string ck_grid = "-1:1:41";
    auto* ck = app.add_subcommand("check-ck", "Chapman-Kolmogorov convolution check (JSON)");
    ck_m.add_to(ck, false, false);
    ck->add_option("--s", ck_s, "Intermediate time, 0 < s < t")->capture_default_str();
    ck->add_option("--x-grid", ck_grid, "x-grid a:b:n")->capture_default_str();
    ck->add_option("--tol", ck_tol, "Max absolute error")->capture_default_str();
    add_output(ck);

    // check-identities
    std::size_t id_count = 20;
    double id_tol = 1e-7, flux_tol = 1e-5;
    std::string flux_times = "0.25,1,4";
    ModelOptions id_m;
    id_m.model = "three-phase";
    id_m.sigma1 = 0.2;
    id_m.sigma2 = 0.3;
    id_m.sigma3 = 0.25;
    id_m.q1 = 0.4;
    id_m.q2 = -0.3;
    auto* ids = app.add_subcommand("check-identities", "Kernel integral identities and interface fluxes (JSON)");
    ids->add_option("--count", id_count, "Random triples per identity")->capture_default_str();
    ids->add_option("--tol", id_tol, "Identity tolerance, relative to max(1, |rhs|)")->capture_default_str();
    ids->add_option("--flux-times", flux_times, "Times for the flux checks")->capture_default_str();
    ids->add_option("--flux-tol", flux_tol, "Flux tolerance")->capture_default_str();
    ids->add_option("--sigma1", id_m.sigma1)->capture_default_str();
    ids->add_option("--sigma2", id_m.sigma2)->capture_default_str();
    ids->add_option("--sigma3", id_m.sigma3)->capture_default_str();
    ids->add_option("--q1", id_m.q1)->capture_default_str();
    ids->add_option("--q2", id_m.q2)->capture_default_str();
    add_seed(ids);
    add_output(ids);

    auto active_sub = [&]() -> CLI::App* {
        for (const auto& a : args)
            for (CLI::App* s : app.get_subcommands({}))
                if (s->get_name() == a) return s;
        return nullptr;
    };
    auto usage = [&](const std::string& why) {
        err << "error: " << why << '\n';
        CLI::App* s = active_sub();
        err << (s ? s->help() : app.help());
        return 1;
    };

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        return usage(e.what());
    }

    const bool seed_given = [&] {
        for (CLI::App* s : {mom, smp, ids})
            if (s->parsed() && s->count("--seed") > 0) return true;
        return false;
    }();

    Output result;
    try {
        if (pdf->parsed()) {
            const DensityModel model = pdf_m.resolve();
            const LinearGrid g = parse_linear_grid(pdf_grid, "--x-grid");
            const DensityTable table = density_grid(model, pdf_m.t, g, !no_normal);
            json cfg = header("pdf");
            cfg.update(pdf_m.echo());
            cfg["x_grid"] = pdf_grid;
            cfg["numerical"] = table.numerical;
            std::ostringstream os;
            io::write_density_csv(os, table, cfg.dump());
            result.body = os.str();
        } else if (cdf->parsed()) {
            const PhaseSystem sys = multiphase::detail::as_system(cdf_m.resolve());
            const LinearGrid g = parse_linear_grid(cdf_grid, "--x-grid");
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < g.n; ++i) rows.push_back({g.at(i), *system_cdf(sys, g.at(i), cdf_m.t)});
            json cfg = header("cdf");
            cfg.update(cdf_m.echo());
            cfg["x_grid"] = cdf_grid;
            std::ostringstream os;
            io::write_table_csv(os, {"x", "cdf"}, rows, cfg.dump());
            result.body = os.str();
        } else if (mom->parsed()) {
            json cfg = header("moments");
            if (q_grid.empty()) {
                cfg.update(mom_m.echo());
                json j{{"config", cfg}};
                if (mom_m.model == "two-phase") {
                    const TwoPhaseParams p = mom_m.two_phase();
                    j["moments"] = io::to_json(two_phase_moments(p, mom_m.t));
                    if (mc_draws > 0) {
                        const auto mc = two_phase_monte_carlo_moments(p, mom_m.t, mc_draws, seeded(seed, seed_given, err));
                        j["config"]["seed"] = seed;
                        j["config"]["rng"] = to_string(RngAlgorithm::splitmix64);
                        j["monte_carlo"] = {{"draws", mc.draws},
                                            {"moments", io::to_json(mc.moments)},
                                            {"skewness_se", mc.skewness_se},
                                            {"kurtosis_se", mc.kurtosis_se}};
                    }
                } else {
                    if (mc_draws > 0) throw UsageError("--mc-draws needs --model two-phase");
                    j["moments"] = io::to_json(three_phase_moments(mom_m.three_phase(), mom_m.t));
                }
                result.body = j.dump(2) + "\n";
            } else {
                if (mom_m.model != "two-phase") throw UsageError("--q-grid needs --model two-phase");
                if (!std::isnan(mom_m.q)) throw UsageError("--q and --q-grid are mutually exclusive");
                ModelOptions base = mom_m;
                base.q = 0.0;
                const TwoPhaseParams p0 = base.two_phase();
                const LinearGrid g = parse_linear_grid(q_grid, "--q-grid");
                cfg["model"] = "two-phase";
                cfg["sigma1"] = p0.sigma1;
                cfg["sigma2"] = p0.sigma2;
                cfg["t"] = mom_m.t;
                cfg["q_grid"] = q_grid;
                std::vector<std::string> head{"q", "mean", "variance", "skewness", "kurtosis"};
                if (mc_draws > 0) {
                    cfg["mc_draws"] = mc_draws;
                    cfg["seed"] = seed;
                    cfg["rng"] = to_string(RngAlgorithm::splitmix64);
                    head.insert(head.end(), {"mc_skewness", "mc_skewness_se", "mc_kurtosis", "mc_kurtosis_se"});
                }
                RngState rng = RngState::from_seed(seed);
                if (mc_draws > 0) rng = seeded(seed, seed_given, err);
                std::vector<std::vector<double>> rows;
                for (std::size_t i = 0; i < g.n; ++i) {
                    const TwoPhaseParams p{p0.sigma1, p0.sigma2, g.at(i)};
                    const MomentSummary m = two_phase_moments(p, mom_m.t);
                    std::vector<double> row{p.q, m.mean, m.variance, m.skewness, m.kurtosis};
                    if (mc_draws > 0) {
                        const auto mc = two_phase_monte_carlo_moments(p, mom_m.t, mc_draws, rng.split());
                        row.insert(row.end(), {mc.moments.skewness, mc.skewness_se, mc.moments.kurtosis, mc.kurtosis_se});
                    }
                    rows.push_back(std::move(row));
                }
                std::ostringstream os;
                io::write_table_csv(os, head, rows, cfg.dump());
                result.body = os.str();
            }
        } else if (smp->parsed()) {
            const TwoPhaseParams p = smp_m.two_phase();
            const RngState rng = seeded(seed, seed_given, err);
            const SampleDraws d = two_phase_sample(p, smp_m.t, n_draws, rng);
            json cfg = header("sample");
            cfg.update(smp_m.echo());
            cfg["n"] = n_draws;
            cfg["seed"] = seed;
            cfg["rng"] = to_string(RngAlgorithm::splitmix64);
            std::ostringstream os;
            io::write_comment(os, cfg.dump());
            os << "value\n";
            for (double v : d.values) os << io::sig(v, 17) << '\n';
            result.body = os.str();
        } else if (fit->parsed()) {
            LoadOptions lo;
            lo.unit = parse_return_unit(fit_unit);
            lo.t = fit_t;
            lo.label = fit_label;
            const ReturnSample data = load_returns(fit_input, lo);
            fit_cfg.demean = fit_demean;
            const FitReport rep = fit_two_phase(data, fit_cfg);
            json cfg = header("fit");
            cfg["input"] = fit_input;
            cfg["label"] = data.label;
            cfg["unit"] = fit_unit;
            cfg["t"] = fit_t;
            cfg["demean"] = fit_demean;
            cfg["tol"] = fit_cfg.tol;
            cfg["max_iter"] = fit_cfg.max_iter;
            json j{{"config", cfg}, {"report", io::to_json(rep)}};
            result.body = j.dump(2) + "\n";
        } else if (prc->parsed()) {
            const TwoPhaseParams p = prc_m.two_phase();
            OptionTerms terms{spot, strike, rate, std::nullopt, std::nullopt, parse_day_count(daycount)};
            if (opt_days->count() > 0) {
                if (tau_days < 0) throw UsageError("--tau-days must be >= 0");
                terms.tau_days = tau_days;
            } else if (opt_years->count() > 0) {
                terms.tau_years = tau_years;
            } else {
                throw UsageError("price needs --tau-days or --tau-years");
            }
            const CallQuote q = price_call_detail(PricingModel{p}, terms);
            json cfg = header("price");
            cfg["params"] = io::to_json(p);
            cfg["terms"] = io::to_json(terms);
            json j{{"config", cfg}};
            j.update(io::to_json(q));
            j["put_from_parity"] = put_from_parity(q.price, terms.spot, terms.strike, terms.rate, terms.tau());
            result.body = j.dump(2) + "\n";
        } else if (srf->parsed()) {
            const TwoPhaseParams p = srf_m.two_phase();
            const std::vector<double> ks = parse_step_range(strikes, "--strikes").values();
            const std::vector<int> ds = parse_int_list(taus, "--taus");
            OptionTerms base{srf_spot, ks.front(), srf_rate, ds.front(), std::nullopt, parse_day_count(srf_daycount)};
            const auto rows = surface(PricingModel{p}, ks, ds, base);
            json cfg = header("surface");
            cfg["params"] = io::to_json(p);
            cfg["spot"] = srf_spot;
            cfg["rate"] = srf_rate;
            cfg["strikes"] = strikes;
            cfg["taus"] = taus;
            cfg["day_count"] = srf_daycount;
            cfg["bs_reference_vol"] = "commensurate";
            std::size_t failed = 0;
            for (const auto& r : rows)
                if (!r.error.empty()) {
                    ++failed;
                    err << "warning: tau_days " << r.tau_days << ", strike " << r.strike << ": " << r.error << '\n';
                }
            cfg["failed_cells"] = failed;
            std::ostringstream os;
            io::write_surface_csv(os, rows, cfg.dump());
            result.body = os.str();
        } else if (pde->parsed()) {
            const PhaseSystem sys = multiphase::detail::as_system(pde_m.resolve());
            if (!has_closed_form(sys) && !sys.uniform()) {
                throw UsageError("check-pde needs a layout with a closed form (two-phase, three-phase, or uniform)");
            }
            const SolverGrid g = make_solver_grid(sys, pde_m.t, pde_nx, pde_dt, pde_warm);
            const GridSolution s1 = solve_system(sys, g, pde_m.t);
            const ClosedFormComparison c1 = compare_to_closed_form(s1, sys, -pde_window, pde_window);
            const GridSolution s2 = solve_system(sys, g.refined(), pde_m.t);
            const ClosedFormComparison c2 = compare_to_closed_form(s2, sys, -pde_window, pde_window);
            const double ratio = c2.sup_abs_error > 0.0 ? c1.sup_abs_error / c2.sup_abs_error : HUGE_VAL;
            result.passed = c1.sup_rel_error <= pde_tol && ratio >= 3.0 && s1.min_value() >= -1e-10;
            auto report = [](const GridSolution& s, const ClosedFormComparison& c) {
                return json{{"grid", io::to_json(s.grid)},
                            {"steps", s.steps},
                            {"mass", s.mass},
                            {"max_mass_drift", s.max_mass_drift},
                            {"max_snap_distance", s.max_snap_distance},
                            {"min_value", s.min_value()},
                            {"warm_start_exact", s.warm_start_exact},
                            {"sup_error_vs_closed_form", c.sup_abs_error},
                            {"sup_relative_error", c.sup_rel_error},
                            {"x_at_max_error", c.x_at_max}};
            };
            json cfg = header("check-pde");
            cfg.update(pde_m.echo());
            cfg["nx"] = pde_nx;
            cfg["dt"] = pde_dt;
            cfg["t_warm"] = pde_warm;
            cfg["window"] = pde_window;
            cfg["tol"] = pde_tol;
            json j{{"config", cfg}, {"base", report(s1, c1)}, {"refined", report(s2, c2)}};
            j["refinement_ratio"] = io::number(ratio);
            j["pass"] = result.passed;
            result.body = j.dump(2) + "\n";
            if (!pde_solution.empty()) {
                std::ostringstream os;
                io::write_solution_csv(os, s1, cfg.dump());
                io::write_file_atomic(pde_solution, os.str());
            }
        } else if (ck->parsed()) {
            const TwoPhaseParams p = ck_m.two_phase();
            if (!(ck_s > 0.0 && ck_s < ck_m.t)) throw UsageError("check-ck needs 0 < --s < --t");
            const LinearGrid g = parse_linear_grid(ck_grid, "--x-grid");
            std::vector<double> xs(g.n);
            for (std::size_t i = 0; i < g.n; ++i) xs[i] = g.at(i);
            const auto rep = chapman_kolmogorov_check(p, ck_s, ck_m.t, xs);
            result.passed = rep.max_abs_error <= ck_tol;
            json cfg = header("check-ck");
            cfg.update(ck_m.echo());
            cfg["s"] = ck_s;
            cfg["x_grid"] = ck_grid;
            cfg["tol"] = ck_tol;
            json j{{"config", cfg},
                   {"max_abs_error", rep.max_abs_error},
                   {"x_at_max", rep.x_at_max},
                   {"points", rep.points},
                   {"pass", result.passed}};
            result.body = j.dump(2) + "\n";
        } else if (ids->parsed()) {
            const ThreePhaseParams fp = id_m.three_phase();
            RngState rng = seeded(seed, seed_given, err);
            auto draw = [&] { return 0.05 + 1.95 * rng.next_open01(); };
            auto ok = [&](const IdentityCheck& c) { return c.abs_error() <= id_tol * std::max(1.0, std::abs(c.rhs)); };
            json cases = json::array();
            double worst = 0.0;
            bool all = true;
            auto record = [&](const char* name, json args, const IdentityCheck& c) {
                const bool pass = ok(c);
                all = all && pass;
                worst = std::max(worst, c.abs_error() / std::max(1.0, std::abs(c.rhs)));
                cases.push_back({{"identity", name}, {"args", std::move(args)}, {"lhs", c.lhs}, {"rhs", c.rhs},
                                 {"abs_error", c.abs_error()}, {"pass", pass}});
            };
            for (std::size_t i = 0; i < id_count; ++i) {
                const double q = draw(), a2 = draw(), t = draw();
                record("erfc_kernel", {{"q", q}, {"a2", a2}, {"t", t}}, check_erfc_kernel_identity(q, a2, t));
            }
            for (std::size_t i = 0; i < id_count; ++i) {
                const double al = draw(), be = draw(), t = draw();
                record("symmetric_erfc", {{"alpha", al}, {"beta", be}, {"t", t}},
                       check_symmetric_erfc_identity(al, be, t));
            }
            for (std::size_t i = 0; i < id_count; ++i) {
                const double y = draw(), q = draw(), a = draw(), t = draw();
                record("gaussian_kernel", {{"y", y}, {"q", q}, {"a", a}, {"t", t}},
                       check_gaussian_kernel_identity(y, q, a, t));
            }
            for (std::size_t i = 0; i < id_count; ++i) {
                const double y = draw(), q = draw(), a1 = draw(), a2 = draw(), t = draw();
                record("two_scale_kernel", {{"y", y}, {"q", q}, {"a1", a1}, {"a2", a2}, {"t", t}},
                       check_two_scale_kernel_identity(y, q, a1, a2, t));
            }
            json fluxes = json::array();
            double worst_flux = 0.0;
            for (double t : parse_double_list(flux_times, "--flux-times")) {
                const InterfaceFlux f = three_phase_interface_flux(fp, t);
                const InterfaceFlux fd = three_phase_flux_finite_difference(fp, t);
                const double e = std::max(std::abs(f.upper - fd.upper), std::abs(f.lower - fd.lower));
                worst_flux = std::max(worst_flux, e);
                const bool pass = e <= flux_tol;
                all = all && pass;
                fluxes.push_back({{"t", t}, {"upper", f.upper}, {"upper_fd", fd.upper}, {"lower", f.lower},
                                  {"lower_fd", fd.lower}, {"max_abs_error", e}, {"pass", pass}});
            }
            result.passed = all;
            json cfg = header("check-identities");
            cfg["count"] = id_count;
            cfg["tol"] = id_tol;
            cfg["flux_tol"] = flux_tol;
            cfg["flux_params"] = io::to_json(fp);
            cfg["seed"] = seed;
            cfg["rng"] = to_string(RngAlgorithm::splitmix64);
            json j{{"config", cfg},
                   {"identities", cases},
                   {"max_relative_identity_error", worst},
                   {"fluxes", fluxes},
                   {"max_flux_error", worst_flux},
                   {"pass", all}};
            result.body = j.dump(2) + "\n";
        }
    } catch (const UsageError& e) {
        return usage(e.what());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (output_path.empty()) {
            out << result.body;
            out.flush();
        } else {
            io::write_file_atomic(output_path, result.body);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    if (!result.passed) {
        err << "check failed\n";
        return 2;
    }
    return 0;
}

}  // namespace multiphase::cli
