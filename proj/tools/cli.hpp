#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfkit/report.hpp"

namespace qfkit::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitToleranceFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Runs the tool as if invoked with argv; output goes to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// `key = value` lines; '#' starts a comment. Throws std::invalid_argument on
// malformed lines and duplicate keys. Key validity is checked by the caller.
std::map<std::string, std::string> parse_config(std::istream& in);

struct VerifyCase {
    std::string identity;
    std::function<VerificationReport()> run;
};

struct CaseOutcome {
    VerificationReport report;
    double tolerance;
    bool pass;
};

double default_tolerance(const std::string& identity);

// Every identity at the parameter sets the harness pins; fixed order.
std::vector<VerifyCase> full_battery(const TruncationPolicy& pol);
// A subset that finishes in about a second.
std::vector<VerifyCase> quick_battery(const TruncationPolicy& pol);

// Runs cases on `jobs` threads. Outcomes come back in input order and the first
// exception by index is rethrown, so the result does not depend on `jobs`.
std::vector<CaseOutcome> run_cases(const std::vector<VerifyCase>& cases, int jobs, std::optional<double> tol);

}  // namespace qfkit::cli
