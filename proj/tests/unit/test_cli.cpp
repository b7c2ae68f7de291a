// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "multiphase/cli.hpp"
#include "multiphase/phase_kernel.hpp"

using multiphase::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<double> column(const std::string& csv, std::size_t col) {
    std::vector<double> v;
    const auto ls = lines_of(csv);
    for (std::size_t i = 2; i < ls.size(); ++i) {
        std::istringstream row(ls[i]);
        std::string cell;
        for (std::size_t c = 0; c <= col; ++c) std::getline(row, cell, ',');
        v.push_back(std::stod(cell));
    }
    return v;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("multiphase_cli_test_" + name);
}

}  // namespace

TEST(Cli, PdfFigureGrid) {
    const Result r = call({"pdf", "--model", "two-phase", "--sigma1", "0.2", "--sigma2", "0.3", "--q", "-0.1", "--t",
                           "1", "--x-grid", "-1:1:401"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines_of(r.out);
    ASSERT_EQ(ls.size(), 403u);
    EXPECT_EQ(ls[0].rfind("# ", 0), 0u);
    EXPECT_EQ(ls[1].rfind("x,density", 0), 0u);
    const auto x = column(r.out, 0);
    const auto d = column(r.out, 1);
    for (std::size_t i = 0; i < x.size(); ++i)
        EXPECT_NEAR(d[i], multiphase::two_phase_pdf({0.2, 0.3, -0.1}, x[i], 1.0), 1e-10 * std::max(1.0, d[i]));  // 12 significant digits in the CSV
}

TEST(Cli, PriceReferenceCell) {
    const Result r = call({"price", "--sigma1", "0.3", "--sigma2", "0.4", "--q", "-0.02", "--s", "100", "--k", "80",
                           "--r", "0.05", "--tau-days", "17"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_NEAR(j.at("price").get<double>(), 20.192, 1e-3);
    EXPECT_TRUE(j.contains("config"));
}

TEST(Cli, FlatSurface) {
    const Result r = call({"surface", "--sigma1", "0.3", "--sigma2", "0.3", "--q", "-0.02"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines_of(r.out);
    ASSERT_EQ(ls.size(), 50u);
    std::istringstream head(ls[1]);
    std::size_t ivcol = 0, c = 0;
    for (std::string h; std::getline(head, h, ','); ++c)
        if (h == "implied_vol") ivcol = c;
    ASSERT_GT(ivcol, 0u);
    for (double v : column(r.out, ivcol)) EXPECT_NEAR(v, 0.3, 1e-5);  // printed with 6 significant digits
}

TEST(Cli, MomentsJsonAndGrid) {
    Result r = call({"moments", "--sigma1", "0.3", "--sigma2", "0.3", "--q", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_NEAR(j.at("moments").at("kurtosis").get<double>(), 3.0, 1e-6);
    r = call({"moments", "--sigma1", "0.025", "--sigma2", "0.05", "--t", "21", "--q-grid", "-0.5:0.5:11"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines_of(r.out).size(), 13u);
}

TEST(Cli, SampleIsSeededAndReproducible) {
    const std::vector<std::string> args{"sample", "--sigma1", "0.2", "--sigma2", "0.3", "--q", "-0.1", "--n", "5",
                                        "--seed", "42"};
    const Result a = call(args), b = call(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(lines_of(a.out).size(), 7u);
    const Result unseeded = call({"sample", "--sigma1", "0.2", "--sigma2", "0.3", "--q", "-0.1", "--n", "3"});
    EXPECT_EQ(unseeded.code, 0);
    EXPECT_NE(unseeded.err.find("seed"), std::string::npos);
}

TEST(Cli, FitRoundTrip) {
    const auto path = temp_file("returns.csv");
    {
        std::ofstream f(path);
        f << "ret\n";
        const auto d = multiphase::two_phase_sample({0.01, 0.035, -0.02}, 1.0, 3000,
                                                    multiphase::RngState::from_seed(8));
        for (double v : d.values) f << v << '\n';
    }
    const Result r = call({"fit", "--input", path.string(), "--label", "synthetic"});
    std::filesystem::remove(path);
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("config").at("label"), "synthetic");
    EXPECT_GT(j.at("report").at("lr").get<double>(), 0.0);
}

TEST(Cli, FitBadInputIsError) {
    const auto path = temp_file("bad.csv");
    {
        std::ofstream f(path);
        f << "0.01\nNaN\n0.02\n";
    }
    const Result r = call({"fit", "--input", path.string()});
    std::filesystem::remove(path);
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("2"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(call({}).code, 1);
    EXPECT_EQ(call({"nonsense"}).code, 1);
    EXPECT_EQ(call({"price", "--sigma1", "0.3", "--sigma2", "0.4", "--q", "-0.02", "--k", "80"}).code, 1);
    EXPECT_EQ(call({"pdf", "--x-grid", "1:0"}).code, 1);
    const Result r = call({"price", "--k", "80", "--tau-days", "17", "--daycount", "360"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--daycount"), std::string::npos);
}

TEST(Cli, DomainErrorsExitTwo) {
    EXPECT_EQ(call({"pdf", "--sigma1", "-0.2", "--sigma2", "0.3", "--q", "0.1"}).code, 2);
}

TEST(Cli, ChecksPass) {
    Result r = call({"check-ck", "--sigma1", "0.2", "--sigma2", "0.3", "--q", "-0.1", "--s", "0.4", "--x-grid",
                     "-1:1:21"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    r = call({"check-identities", "--count", "5"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(json::parse(r.out).at("pass").get<bool>());
}

TEST(Cli, CheckFailureExitsTwo) {
    const Result r = call({"check-ck", "--sigma1", "0.2", "--sigma2", "0.3", "--q", "-0.1", "--s", "0.4", "--x-grid",
                           "-1:1:5", "--tol", "1e-30"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, OutputFile) {
    const auto path = temp_file("cdf.csv");
    const Result r = call({"cdf", "--sigma1", "0.2", "--sigma2", "0.3", "--q", "-0.1", "--x-grid", "-1:1:11", "-o",
                           path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::filesystem::remove(path);
    EXPECT_EQ(lines_of(ss.str()).size(), 13u);
}

TEST(Cli, BinaryVersionAndExitCode) {
    const std::string exe = MULTIPHASE_CLI_PATH;
    FILE* p = popen((exe + " --version").c_str(), "r");
    ASSERT_NE(p, nullptr);
    char buf[256] = {};
    const std::size_t n = std::fread(buf, 1, sizeof(buf) - 1, p);
    EXPECT_EQ(pclose(p), 0);
    EXPECT_NE(std::string(buf, n).find(MULTIPHASE_VERSION), std::string::npos);
    const int status = std::system((exe + " frobnicate >/dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(status), 1);
}
