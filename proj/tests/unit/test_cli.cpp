#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "qfkit/pairs.hpp"

using namespace qfkit;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p;
}

}  // namespace

TEST(CliExitCodes, PassingVerificationExitsZero) {
    const auto r = run({"verify", "lemma33", "--D", "5", "--delta", "-20", "--q", "6"});
    EXPECT_EQ(r.code, cli::kExitPass);
    EXPECT_EQ(json::parse(r.out)["abs_err"], 0);
}

TEST(CliExitCodes, ToleranceFailureExitsOne) {
    EXPECT_EQ(run({"--tol", "0", "verify", "lemma41", "--z", "0.5", "--C", "3.5", "--Phi", "2"}).code, cli::kExitToleranceFailure);
}

TEST(CliExitCodes, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"classtable", "--d1", "-5", "--d2", "-4", "--t", "0"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"verify", "lemma33", "--D", "5", "--delta", "-4", "--q", "3"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"--format", "xml", "lfun", "zeta", "--s", "2"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"transform", "L", "--Phi", "0.5"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"--policy.u_max", "-1", "verify", "lemma26", "--t", "0", "--n", "1", "--D", "1", "--s", "2"}).code,
              cli::kExitUsage);
}

TEST(CliExitCodes, PoleExitsThree) {
    const auto r = run({"lfun", "zeta", "--s", "1"});
    EXPECT_EQ(r.code, cli::kExitNumerical);
    EXPECT_FALSE(r.err.empty());
}

TEST(CliConfig, ParsesCommentsAndRejectsMalformedLines) {
    std::istringstream ok("# header\ntol = 1e-3\n\n  format=plain  # trailing\n");
    const auto m = cli::parse_config(ok);
    EXPECT_EQ(m.at("tol"), "1e-3");
    EXPECT_EQ(m.at("format"), "plain");
    std::istringstream no_eq("tol 1e-3\n"), dup("tol = 1\ntol = 2\n");
    EXPECT_THROW(cli::parse_config(no_eq), std::invalid_argument);
    EXPECT_THROW(cli::parse_config(dup), std::invalid_argument);
}

TEST(CliConfig, FileValuesApplyAndFlagsWin) {
    const auto cfg = temp_file("qfkit_test_cfg.txt", "tol = 0\nformat = csv\n");
    const std::vector<std::string> base = {"--config", cfg.string(), "verify", "lemma41", "--z", "0.5", "--C", "3.5", "--Phi", "2"};
    const auto from_file = run(base);
    EXPECT_EQ(from_file.code, cli::kExitToleranceFailure);
    EXPECT_EQ(from_file.out.rfind("identity,", 0), 0u);
    auto args = base;
    args.insert(args.begin(), {"--tol", "1e-6"});
    EXPECT_EQ(run(args).code, cli::kExitPass);
    const auto bad = temp_file("qfkit_test_bad.txt", "colour = blue\n");
    EXPECT_EQ(run({"--config", bad.string(), "lfun", "zeta", "--s", "2"}).code, cli::kExitUsage);
    std::filesystem::remove(cfg);
    std::filesystem::remove(bad);
}

TEST(CliDeterminism, BatchOutputIndependentOfThreadCount) {
    const auto one = run({"--omit-runtime", "--jobs", "1", "selftest", "--probes", "30"});
    const auto three = run({"--omit-runtime", "--jobs", "3", "selftest", "--probes", "30"});
    const auto again = run({"--omit-runtime", "--jobs", "1", "selftest", "--probes", "30"});
    EXPECT_EQ(one.code, cli::kExitPass);
    EXPECT_EQ(one.out, three.out);
    EXPECT_EQ(one.out, again.out);
    EXPECT_EQ(one.out.find("runtime_ms"), std::string::npos);
}

TEST(CliDeterminism, RunCasesKeepsInputOrder) {
    const auto cases = cli::quick_battery({});
    const auto a = cli::run_cases(cases, 1, std::nullopt), b = cli::run_cases(cases, 4, std::nullopt);
    ASSERT_EQ(a.size(), cases.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].report.identity, cases[i].identity);
        EXPECT_EQ(to_json(a[i].report, false), to_json(b[i].report, false));
        EXPECT_TRUE(a[i].pass) << a[i].report.identity;
    }
    EXPECT_THROW(cli::run_cases(cases, 0, std::nullopt), std::invalid_argument);
}

TEST(CliClassTable, TrivialCharactersReproducePlainCount) {
    const auto r = run({"classtable", "--d1", "-8:-3", "--d2", "-4,-3", "--t", "0:8"});
    ASSERT_EQ(r.code, cli::kExitPass);
    const auto rows = json::parse(r.out);
    ASSERT_FALSE(rows.empty());
    for (const auto& row : rows) {
        EXPECT_EQ(row["h_plain"], row["h_weighted"]);
        const Int d1 = row["d1"], d2 = row["d2"], t = row["t"];
        EXPECT_EQ(row["h_plain"].get<Int>(), h_plain(d1, d2, t));
        EXPECT_NE(d1, -5);  // ranges skip non-discriminants
    }
    EXPECT_EQ(run({"classtable", "--d1", "-8:-3", "--d2", "-4,-3", "--t", "0:8"}).out, r.out);
}

TEST(CliClassTable, CsvHeaderAndCharacterSigns) {
    const auto r = run({"--format", "csv", "classtable", "--d1", "-3", "--d2", "-3", "--t", "5", "--D1", "-3", "--D2", "-3"});
    ASSERT_EQ(r.code, cli::kExitPass);
    EXPECT_EQ(r.out, "d1,d2,t,D1,D2,h_plain,h_weighted\n-3,-3,5,-3,-3,2,-2\n");
}

TEST(CliTransform, ReferenceValues) {
    const auto t = json::parse(run({"transform", "T", "--y", "0"}).out);
    EXPECT_NEAR(t["value"].get<double>(), 0.9800229001692855, 1e-12);
    const auto a = json::parse(run({"transform", "A", "--C", "6", "--tau", "1"}).out);
    EXPECT_NEAR(a["value"].get<double>(), a["closed_form"].get<double>(), 1e-10);
    const auto f = json::parse(run({"transform", "F12", "--m", "zero", "--lambda", "-1"}).out);
    EXPECT_EQ(f["F2"].get<double>(), 0.0);
    const auto c = run({"transform", "T", "--curve", "0:2:3"});
    EXPECT_EQ(c.code, cli::kExitPass);
    EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 4);
}

TEST(CliOutput, WritesToFileWhenRequested) {
    const auto p = std::filesystem::temp_directory_path() / "qfkit_test_out.json";
    std::filesystem::remove(p);
    const auto r = run({"--out", p.string(), "lfun", "dirichlet", "--s", "2", "--D", "-4"});
    ASSERT_EQ(r.code, cli::kExitPass);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(p);
    const auto j = json::parse(in);
    EXPECT_NEAR(j["re"].get<double>(), 0.915965594177219, 1e-12);
    std::filesystem::remove(p);
}

TEST(CliBinary, ProcessExitStatusFollowsContract) {
    const std::string bin = QFKIT_TOOL_PATH;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("verify lemma33 --D 1 --delta -4 --q 6"), 0);
    EXPECT_EQ(status("--tol 0 verify lemma41 --z 0 --C 2 --Phi 2"), 1);
    EXPECT_EQ(status("classtable --d1 7 --d2 -4 --t 0"), 2);
    EXPECT_EQ(status("lfun zeta --s 1"), 3);
}
