#include "qfkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qfkit {

void TruncationPolicy::validate() const {
    if (!(u_max > 0.0) || !std::isfinite(u_max)) throw std::invalid_argument("policy.u_max must be positive");
    if (!(y_max > 1.0) || !std::isfinite(y_max)) throw std::invalid_argument("policy.y_max must exceed 1");
    if (f_max < 0) throw std::invalid_argument("policy.f_max must be >= 0");
    if (eis_cutoff < 1) throw std::invalid_argument("policy.eis_cutoff must be positive");
}

VerificationReport make_report(std::string identity, NamedValues inputs, double lhs, double rhs,
                               const TruncationPolicy& pol) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_err = std::abs(lhs - rhs);
    r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    r.truncation = pol;
    return r;
}

std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) return "0";  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out + "\"";
}

namespace {

std::string object(const NamedValues& values) {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += json_string(values[i].first) + ":" + json_number(values[i].second);
    }
    return out + "}";
}

}  // namespace

std::string to_json(const VerificationReport& r, bool include_runtime) {
    const TruncationPolicy& p = r.truncation;
    std::string out = "{";
    out += "\"identity\":" + json_string(r.identity);
    out += ",\"inputs\":" + object(r.inputs);
    out += ",\"lhs\":" + json_number(r.lhs);
    out += ",\"rhs\":" + json_number(r.rhs);
    out += ",\"abs_err\":" + json_number(r.abs_err);
    out += ",\"rel_err\":" + json_number(r.rel_err);
    if (include_runtime) out += ",\"runtime_ms\":" + json_number(r.runtime_ms);
    out += ",\"truncation\":" + object({{"u_max", p.u_max},
                                        {"y_max", p.y_max},
                                        {"f_max", double(p.f_max)},
                                        {"eis_cutoff", double(p.eis_cutoff)}});
    if (!r.extras.empty()) out += ",\"extras\":" + object(r.extras);
    return out + "}";
}

std::string to_plain(const VerificationReport& r) {
    std::ostringstream os;
    os << r.identity;
    for (const auto& [k, v] : r.inputs) os << ' ' << k << '=' << json_number(v);
    os << "\n  lhs = " << json_number(r.lhs) << "\n  rhs = " << json_number(r.rhs) << "\n  abs_err = " << json_number(r.abs_err)
       << "\n  rel_err = " << json_number(r.rel_err) << '\n';
    return os.str();
}

}  // namespace qfkit
