#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qfkit/checked.hpp"

namespace qfkit {

// Cutoffs for every truncated sum or integral in the geometric checks.
struct TruncationPolicy {
    double u_max = 200.0;  // orbit sums keep u(gamma z, z) <= u_max
    double y_max = 12.0;   // fundamental-domain height cutoff
    Int f_max = 0;         // codiscriminant cutoff; 0 = stop by term monitoring
    Int eis_cutoff = 400;  // Eisenstein lattice box max(|c|, |d|) <= eis_cutoff

    void validate() const;  // throws std::invalid_argument
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct VerificationReport {
    std::string identity;
    NamedValues inputs;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1e-300)
    double runtime_ms = 0.0;
    TruncationPolicy truncation;
    NamedValues extras;  // diagnostics, e.g. number of terms summed

    bool within(double tol) const { return rel_err <= tol; }
};

// Fills abs_err and rel_err from lhs and rhs.
VerificationReport make_report(std::string identity, NamedValues inputs, double lhs, double rhs,
                               const TruncationPolicy& pol = {});

// JSON object with keys identity, inputs, lhs, rhs, abs_err, rel_err,
// runtime_ms, truncation (and extras when present). Doubles use 17
// significant digits; include_runtime = false drops runtime_ms so that the
// text is byte-identical across runs.
std::string to_json(const VerificationReport& r, bool include_runtime = true);
std::string to_plain(const VerificationReport& r);
std::string json_number(double v);
std::string json_string(const std::string& s);

}  // namespace qfkit
