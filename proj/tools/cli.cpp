#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "qfkit/errors.hpp"
#include "qfkit/genus.hpp"
#include "qfkit/geometric.hpp"
#include "qfkit/lfun.hpp"
#include "qfkit/pairs.hpp"
#include "qfkit/specfun.hpp"

namespace qfkit::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw std::invalid_argument(key + ": not a number: '" + v + "'");
    return x;
}

Int parse_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw std::invalid_argument(key + ": not an integer: '" + v + "'");
    return Int(x);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
    return parts;
}

// "a:b" (inclusive, a <= b), "x,y,z" or a single integer.
std::vector<Int> parse_int_set(const std::string& key, const std::string& spec) {
    if (spec.find(':') != std::string::npos) {
        const auto p = split(spec, ':');
        if (p.size() != 2) throw std::invalid_argument(key + ": range must be a:b");
        const Int a = parse_int(key, p[0]), b = parse_int(key, p[1]);
        if (a > b) throw std::invalid_argument(key + ": empty range " + spec);
        if (b - a > 100000) throw std::invalid_argument(key + ": range too long");
        std::vector<Int> out;
        for (Int x = a; x <= b; ++x) out.push_back(x);
        return out;
    }
    std::vector<Int> out;
    for (const auto& p : split(spec, ',')) out.push_back(parse_int(key, p));
    if (out.empty()) throw std::invalid_argument(key + ": empty list");
    return out;
}

// Keeps negative discriminants. Ranges may contain other integers, which are
// skipped; an explicit list may not.
std::vector<Int> discriminant_set(const std::string& key, const std::string& spec) {
    const bool is_range = spec.find(':') != std::string::npos;
    std::vector<Int> out;
    for (Int d : parse_int_set(key, spec)) {
        const bool ok = d < 0 && (mod_pos(d, 4) == 0 || mod_pos(d, 4) == 1);
        if (ok)
            out.push_back(d);
        else if (!is_range)
            throw std::invalid_argument(key + ": " + std::to_string(d) + " is not a negative discriminant");
    }
    if (out.empty()) throw std::invalid_argument(key + ": no negative discriminant in " + spec);
    return out;
}

// power:C:scale | gaussian:sigma | zero | standard:C (scale 4n/|delta|, needs delta and n)
KernelSpec parse_kernel(const std::string& spec, std::optional<std::pair<Int, Int>> delta_n = std::nullopt) {
    const auto p = split(spec, ':');
    if (p.size() == 1 && p[0] == "zero") return KernelSpec::zero();
    if (p.size() == 3 && p[0] == "power") return KernelSpec::power(parse_double("kernel C", p[1]), parse_double("kernel scale", p[2]));
    if (p.size() == 2 && p[0] == "gaussian") return KernelSpec::gaussian(parse_double("kernel sigma", p[1]));
    if (p.size() == 2 && p[0] == "standard") {
        if (!delta_n) throw std::invalid_argument("kernel 'standard' needs a discriminant and n");
        return KernelSpec::standard(parse_double("kernel C", p[1]), delta_n->first, delta_n->second);
    }
    throw std::invalid_argument("unknown kernel '" + spec + "' (power:C:scale, gaussian:sigma, standard:C, zero)");
}

// Only Gaussian test functions have certified decay.
GaussianChi parse_chi(const std::string& spec) {
    const auto p = split(spec, ':');
    if (p.size() == 2 && p[0] == "gaussian") {
        const double sigma = parse_double("chi sigma", p[1]);
        if (!(sigma > 0.0)) throw std::invalid_argument("chi: sigma must be positive");
        return {sigma};
    }
    throw std::invalid_argument("unsupported chi family '" + spec + "' (only gaussian:sigma)");
}

struct Globals {
    double tol = 0.0;
    TruncationPolicy pol;
    std::string format = "json";
    std::string out;
    int jobs = 1;
    std::uint64_t seed = 0;
    std::string config;
    bool omit_runtime = false;
};

// A parameter that may be left unset.
template <class T>
struct Param {
    T value{};
    CLI::Option* opt = nullptr;
    bool given() const { return opt->count() > 0; }
    const T& get(const std::string& what) const {
        if (!given()) throw std::invalid_argument(what + " requires " + opt->get_name());
        return value;
    }
    T or_default(T d) const { return given() ? value : d; }
};

template <class T>
void add(CLI::App* app, Param<T>& p, const std::string& name, const std::string& help) {
    p.opt = app->add_option(name, p.value, help);
}

std::string csv_row(const CaseOutcome& o) {
    const auto& r = o.report;
    return json_string(r.identity) + ',' + json_number(r.lhs) + ',' + json_number(r.rhs) + ',' + json_number(r.abs_err) + ',' +
           json_number(r.rel_err) + ',' + json_number(o.tolerance) + ',' + (o.pass ? "true" : "false");
}

std::string render_outcomes(const std::vector<CaseOutcome>& outs, const Globals& g, bool as_array) {
    std::string text;
    if (g.format == "json") {
        if (as_array) text += "[\n";
        for (std::size_t i = 0; i < outs.size(); ++i) {
            text += to_json(outs[i].report, !g.omit_runtime);
            if (as_array && i + 1 < outs.size()) text += ',';
            text += '\n';
        }
        if (as_array) text += "]\n";
    } else if (g.format == "csv") {
        text += "identity,lhs,rhs,abs_err,rel_err,tolerance,pass\n";
        for (const auto& o : outs) text += csv_row(o) + '\n';
    } else {
        for (const auto& o : outs) text += to_plain(o.report) + "  " + (o.pass ? "PASS" : "FAIL") + " (tol " + json_number(o.tolerance) + ")\n";
    }
    return text;
}

// {"kind":..., "inputs":{...}, <values>}
std::string render_scalar(const std::string& kind, const NamedValues& inputs, const NamedValues& values, const Globals& g) {
    std::string text;
    if (g.format == "json") {
        text = "{\"kind\":" + json_string(kind) + ",\"inputs\":{";
        for (std::size_t i = 0; i < inputs.size(); ++i)
            text += (i ? "," : "") + json_string(inputs[i].first) + ':' + json_number(inputs[i].second);
        text += '}';
        for (const auto& [k, v] : values) text += ',' + json_string(k) + ':' + json_number(v);
        text += "}\n";
    } else if (g.format == "csv") {
        std::string head = "kind", row = kind;
        for (const auto& [k, v] : inputs) head += ',' + k, row += ',' + json_number(v);
        for (const auto& [k, v] : values) head += ',' + k, row += ',' + json_number(v);
        text = head + '\n' + row + '\n';
    } else {
        text = kind;
        for (const auto& [k, v] : inputs) text += ' ' + k + '=' + json_number(v);
        for (const auto& [k, v] : values) text += "\n  " + k + " = " + json_number(v);
        text += '\n';
    }
    return text;
}

struct Curve {
    double a, b;
    int n;
};

Curve parse_curve(const std::string& spec) {
    const auto p = split(spec, ':');
    if (p.size() != 3) throw std::invalid_argument("--curve expects start:stop:count");
    Curve c{parse_double("curve start", p[0]), parse_double("curve stop", p[1]), int(parse_int("curve count", p[2]))};
    if (c.n < 2 || c.n > 100000) throw std::invalid_argument("--curve count must be in [2, 100000]");
    return c;
}

std::string render_curve(const std::string& argname, const Curve& c, const std::function<double(double)>& f) {
    std::string text = argname + ",value\n";
    for (int i = 0; i < c.n; ++i) {
        const double x = c.a + (c.b - c.a) * double(i) / double(c.n - 1);
        text += json_number(x) + ',' + json_number(f(x)) + '\n';
    }
    return text;
}

const std::map<std::string, std::string> kPresets = {{"d4d4", "0,0"}, {"d3d4", "1,0"}, {"d3d3", "1,1"}};

class Tool {
public:
    Tool() : app_("qfkit: class numbers of form pairs, Zagier L-functions and numerical checks of trace-formula identities") {
        app_.require_subcommand(1);
        app_.set_version_flag("--version", "0.1.0");
        auto global = [&](CLI::Option* o, const std::string& key) {
            config_keys_[key] = o;
            return o;
        };
        global(app_.add_option("--tol", g_.tol, "Relative tolerance for verify (default: per identity)"), "tol")
            ->check(CLI::NonNegativeNumber);
        global(app_.add_option("--policy.u_max", g_.pol.u_max, "Orbit-sum cutoff on u(gamma z, z)"), "policy.u_max");
        global(app_.add_option("--policy.y_max", g_.pol.y_max, "Fundamental-domain height cutoff"), "policy.y_max");
        global(app_.add_option("--policy.f_max", g_.pol.f_max, "Codiscriminant cutoff (0 = term monitoring)"), "policy.f_max");
        global(app_.add_option("--policy.eis_cutoff", g_.pol.eis_cutoff, "Eisenstein lattice box"), "policy.eis_cutoff");
        global(app_.add_option("--format", g_.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"})), "format");
        global(app_.add_option("--out", g_.out, "Write output to this file"), "out");
        global(app_.add_option("--jobs", g_.jobs, "Worker threads for batches")->check(CLI::PositiveNumber), "jobs");
        global(app_.add_option("--seed", g_.seed, "Seed for randomized checks"), "seed");
        global(app_.add_flag("--omit-runtime", g_.omit_runtime, "Drop runtime_ms from JSON reports"), "omit-runtime");
        app_.add_option("--config", g_.config, "File of 'key = value' lines for the global options; flags win");

        setup_classtable();
        setup_verify();
        setup_transform();
        setup_lfun();
        setup_selftest();
    }

    int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        try {
            std::vector<std::string> rev(args.rbegin(), args.rend());
            app_.parse(rev);
        } catch (const CLI::CallForHelp&) {
            out << app_.help();
            return kExitPass;
        } catch (const CLI::CallForAllHelp&) {
            out << app_.help("", CLI::AppFormatMode::All);
            return kExitPass;
        } catch (const CLI::CallForVersion&) {
            out << "0.1.0\n";
            return kExitPass;
        } catch (const CLI::ParseError& e) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        }
        try {
            apply_config();
            g_.pol.validate();
            std::string text;
            const int code = dispatch(text);
            if (g_.out.empty()) {
                out << text;
            } else {
                std::ofstream f(g_.out, std::ios::binary);
                if (!f) throw std::invalid_argument("cannot open --out file '" + g_.out + "'");
                f << text;
            }
            return code;
        } catch (const pole_error& e) {
            err << "pole: " << e.what() << '\n';
            return kExitNumerical;
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << '\n';
            return kExitUsage;
        } catch (const std::exception& e) {
            err << "numerical failure: " << e.what() << '\n';
            return kExitNumerical;
        }
    }

private:
    void apply_config() {
        if (g_.config.empty()) return;
        std::ifstream f(g_.config);
        if (!f) throw std::invalid_argument("cannot read config file '" + g_.config + "'");
        for (const auto& [key, value] : parse_config(f)) {
            const auto it = config_keys_.find(key);
            if (it == config_keys_.end()) throw std::invalid_argument("config: unknown key '" + key + "'");
            if (it->second->count() > 0) continue;  // the flag wins
            it->second->clear();
            it->second->add_result(value);
            try {
                it->second->run_callback();
            } catch (const CLI::Error& e) {
                throw std::invalid_argument("config: " + key + ": " + e.what());
            }
        }
    }

    std::optional<double> tol_override() const {
        if (config_keys_.at("tol")->count() > 0) return g_.tol;
        return std::nullopt;
    }

    int dispatch(std::string& text) {
        if (classtable_->parsed()) return run_classtable(text);
        if (verify_->parsed()) return run_verify(text);
        if (transform_->parsed()) return run_transform(text);
        if (lfun_->parsed()) return run_lfun(text);
        return run_selftest(text);
    }

    // classtable ----------------------------------------------------------
    void setup_classtable() {
        classtable_ = app_.add_subcommand("classtable", "Table of h(d1, d2, t) and the weighted class numbers");
        classtable_->fallthrough();
        classtable_->add_option("--d1", ct_.d1, "Discriminants d1: a:b, list or single value")->required();
        classtable_->add_option("--d2", ct_.d2, "Discriminants d2")->required();
        classtable_->add_option("--t", ct_.t, "Codiscriminants t")->required();
        classtable_->add_option("--D1", ct_.D1, "Genus character for q1")->capture_default_str();
        classtable_->add_option("--D2", ct_.D2, "Genus character for q2")->capture_default_str();
    }

    int run_classtable(std::string& text) {
        const auto d1s = discriminant_set("--d1", ct_.d1), d2s = discriminant_set("--d2", ct_.d2);
        const auto ts = parse_int_set("--t", ct_.t);
        for (Int d : d1s)
            if (!is_valid_character_pair(ct_.D1, d))
                throw std::invalid_argument("D1 = " + std::to_string(ct_.D1) + " is not a character for d1 = " + std::to_string(d));
        for (Int d : d2s)
            if (!is_valid_character_pair(ct_.D2, d))
                throw std::invalid_argument("D2 = " + std::to_string(ct_.D2) + " is not a character for d2 = " + std::to_string(d));
        const auto rows = class_table(d1s, d2s, ts, ct_.D1, ct_.D2);
        if (g_.format == "json") {
            text = "[\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const auto& r = rows[i];
                std::ostringstream os;
                os << "{\"d1\":" << r.d1 << ",\"d2\":" << r.d2 << ",\"t\":" << r.t << ",\"D1\":" << r.D1 << ",\"D2\":" << r.D2
                   << ",\"h_plain\":" << r.h_plain << ",\"h_weighted\":" << r.h_weighted << '}' << (i + 1 < rows.size() ? "," : "")
                   << '\n';
                text += os.str();
            }
            text += "]\n";
        } else {
            std::ostringstream os;
            write_class_table_csv(os, rows);
            text = os.str();
        }
        return kExitPass;
    }

    // verify --------------------------------------------------------------
    void setup_verify() {
        verify_ = app_.add_subcommand("verify", "Check one identity numerically; exit 0 iff rel_err <= tolerance");
        verify_->fallthrough();
        verify_->add_option("identity", v_.identity, "lemma22|lemma25|lemma26|lemma33|lemma35i|lemma35ii|lemma41|zagier")
            ->check(CLI::IsMember({"lemma22", "lemma25", "lemma26", "lemma33", "lemma35i", "lemma35ii", "lemma41", "zagier"}));
        verify_->add_flag("--all", v_.all, "Run the full battery of pinned cases");
        add(verify_, v_.preset, "--case", "lemma22 preset: d4d4, d3d4 or d3d3");
        v_.preset.opt->check(CLI::IsMember({"d4d4", "d3d4", "d3d3"}));
        add(verify_, v_.C, "--C", "Power-kernel exponent (default 6)");
        add(verify_, v_.t1, "--t1", "lemma22: trace of the first family");
        add(verify_, v_.n1, "--n1", "lemma22: determinant of the first family");
        add(verify_, v_.D1, "--D1", "lemma22: first genus character");
        add(verify_, v_.t2, "--t2", "lemma22: trace of the second family");
        add(verify_, v_.n2, "--n2", "lemma22: determinant of the second family");
        add(verify_, v_.D2, "--D2", "lemma22: second genus character");
        add(verify_, v_.tau1, "--tau1", "lemma25: first trace in (-2, 2)");
        add(verify_, v_.tau2, "--tau2", "lemma25: second trace in (-2, 2)");
        add(verify_, v_.X, "--X", "lemma25: fixed points at X + i and -X + i");
        add(verify_, v_.t, "--t", "lemma26: trace");
        add(verify_, v_.n, "--n", "lemma26: determinant");
        add(verify_, v_.D, "--D", "Fundamental discriminant of the character");
        add(verify_, v_.delta, "--delta", "Discriminant");
        add(verify_, v_.q, "--q", "lemma33: modulus q");
        add(verify_, v_.s, "--s", "Real spectral argument");
        add(verify_, v_.z, "--z", "lemma41: spectral variable");
        add(verify_, v_.Phi, "--Phi", "lemma41: Phi > 1");
        add(verify_, v_.qmax, "--qmax", "zagier: Dirichlet-series length (default 100000)");
    }

    VerifyCase single_case() {
        const std::string& id = v_.identity;
        const auto& pol = g_.pol;
        const double C = v_.C.or_default(6.0);
        if (id == "lemma22") {
            Int t1, n1, D1, t2, n2, D2;
            if (v_.preset.given() || !v_.t1.given()) {
                const auto p = split(kPresets.at(v_.preset.or_default("d4d4")), ',');
                t1 = parse_int("case", p[0]), t2 = parse_int("case", p[1]);
                n1 = n2 = D1 = D2 = 1;
            } else {
                t1 = v_.t1.get(id), n1 = v_.n1.get(id), t2 = v_.t2.get(id), n2 = v_.n2.get(id);
                D1 = v_.D1.or_default(1), D2 = v_.D2.or_default(1);
            }
            const MSpec a{t1, n1, D1, KernelSpec::standard(C, t1 * t1 - 4 * n1, n1)};
            const MSpec b{t2, n2, D2, KernelSpec::standard(C, t2 * t2 - 4 * n2, n2)};
            return {id, [=] { return inner_product_check(a, b, pol); }};
        }
        if (id == "lemma25") {
            const double tau1 = v_.tau1.get(id), tau2 = v_.tau2.get(id), X = v_.X.get(id);
            const auto m = KernelSpec::power(C, 1.0);
            return {id, [=] { return lemma25_check(tau1, tau2, X, m, m); }};
        }
        if (id == "lemma26") {
            const Int t = v_.t.get(id), n = v_.n.get(id), D = v_.D.or_default(1);
            const double s = v_.s.or_default(2.0);
            const MSpec spec{t, n, D, KernelSpec::standard(C, t * t - 4 * n, n)};
            return {id, [=] { return eisenstein_pairing_check(spec, s, pol); }};
        }
        if (id == "lemma33") {
            const Int D = v_.D.get(id), delta = v_.delta.get(id), q = v_.q.get(id);
            return {id, [=] { return convolution_check(D, delta, q); }};
        }
        if (id == "lemma35i") {
            const Int delta = v_.delta.get(id), D = v_.D.or_default(1);
            const double s = v_.s.get(id);
            return {id, [=] { return heegner_eisenstein_check(delta, D, s, pol); }};
        }
        if (id == "lemma35ii") {
            const Int delta = v_.delta.get(id), D = v_.D.or_default(1);
            return {id, [=] { return heegner_mass_check(delta, D); }};
        }
        if (id == "lemma41") {
            const double z = v_.z.get(id), Phi = v_.Phi.get(id), c = v_.C.get(id);
            return {id, [=] { return hypergeometric_pairing_check(z, c, Phi); }};
        }
        const Int delta = v_.delta.get(id), qmax = v_.qmax.or_default(100000);
        const double s = v_.s.get(id);
        return {id, [=] { return zagier_series_check(delta, s, qmax); }};
    }

    int run_verify(std::string& text) {
        if (v_.all == !v_.identity.empty()) throw std::invalid_argument("verify needs exactly one of <identity> or --all");
        const auto cases = v_.all ? full_battery(g_.pol) : std::vector<VerifyCase>{single_case()};
        const auto outs = run_cases(cases, g_.jobs, tol_override());
        text = render_outcomes(outs, g_, v_.all);
        for (const auto& o : outs)
            if (!o.pass) return kExitToleranceFailure;
        return kExitPass;
    }

    // transform -----------------------------------------------------------
    void setup_transform() {
        transform_ = app_.add_subcommand("transform", "Evaluate an integral transform: T, L, A or F12");
        transform_->fallthrough();
        transform_->add_option("kind", tr_.kind, "T | L | A | F12")->required()->check(CLI::IsMember({"T", "L", "A", "F12"}));
        add(transform_, tr_.chi, "--chi", "T: test function, gaussian:sigma (default gaussian:1)");
        add(transform_, tr_.y, "--y", "T: argument y >= 0 (default 0)");
        add(transform_, tr_.tau1, "--tau1", "L: first trace (default 0)");
        add(transform_, tr_.tau2, "--tau2", "L: second trace (default 0)");
        add(transform_, tr_.Phi, "--Phi", "L: Phi > 1");
        add(transform_, tr_.m1, "--m1", "L: first kernel (default power:6:1)");
        add(transform_, tr_.m2, "--m2", "L: second kernel (default power:6:1)");
        add(transform_, tr_.C, "--C", "A: power exponent of the standard kernel (default 6)");
        add(transform_, tr_.tau, "--tau", "A: spectral parameter, lambda = -1/4 - tau^2");
        add(transform_, tr_.lambda, "--lambda", "A, F12: eigenvalue (A: instead of --tau)");
        add(transform_, tr_.delta, "--delta", "A: negative discriminant (default -4); F12: positive (default 5)");
        add(transform_, tr_.n, "--n", "A, F12: n (default 1)");
        add(transform_, tr_.m, "--m", "A, F12: kernel (A default standard:C, F12 default power:6:1)");
        add(transform_, tr_.curve, "--curve", "start:stop:count; CSV samples over y (T), Phi (L), tau (A) or lambda (F12)");
    }

    int run_transform(std::string& text) {
        const std::string& kind = tr_.kind;
        std::optional<Curve> curve;
        if (tr_.curve.given()) curve = parse_curve(tr_.curve.value);
        if (kind == "T") {
            const GaussianChi chi = parse_chi(tr_.chi.or_default("gaussian:1"));
            if (curve) {
                text = render_curve("y", *curve, [&](double y) { return T_transform(chi, y); });
                return kExitPass;
            }
            const double y = tr_.y.or_default(0.0);
            if (!(y >= 0.0)) throw std::invalid_argument("T: y must be >= 0");
            text = render_scalar("T", {{"sigma", chi.sigma}, {"y", y}}, {{"value", T_transform(chi, y)}}, g_);
            return kExitPass;
        }
        if (kind == "L") {
            const double tau1 = tr_.tau1.or_default(0.0), tau2 = tr_.tau2.or_default(0.0);
            const KernelSpec m1 = parse_kernel(tr_.m1.or_default("power:6:1")), m2 = parse_kernel(tr_.m2.or_default("power:6:1"));
            auto f = [&](double Phi) { return L_pair_integral(tau1, tau2, Phi, m1, m2); };
            if (curve) {
                text = render_curve("Phi", *curve, f);
                return kExitPass;
            }
            const double Phi = tr_.Phi.get("transform L");
            text = render_scalar("L", {{"tau1", tau1}, {"tau2", tau2}, {"Phi", Phi}}, {{"value", f(Phi)}}, g_);
            return kExitPass;
        }
        if (kind == "A") {
            const double C = tr_.C.or_default(6.0);
            const Int delta = tr_.delta.or_default(-4), n = tr_.n.or_default(1);
            if (delta >= 0 || n <= 0) throw std::invalid_argument("A: needs delta < 0 and n > 0");
            const std::string mspec = tr_.m.or_default("standard:" + json_number(C));
            const KernelSpec m = parse_kernel(mspec, std::pair{delta, n});
            const bool standard = !tr_.m.given() || mspec.rfind("standard:", 0) == 0;
            auto param = [&](double x) { return tr_.lambda.given() ? SpectralParam::from_lambda(x) : SpectralParam::from_tau(x); };
            if (curve) {
                text = render_curve(tr_.lambda.given() ? "lambda" : "tau", *curve,
                                    [&](double x) { return radial_coefficient_A(m, delta, n, param(x)); });
                return kExitPass;
            }
            const double x = tr_.lambda.given() ? tr_.lambda.value : tr_.tau.or_default(0.0);
            const SpectralParam p = param(x);
            NamedValues values{{"value", radial_coefficient_A(m, delta, n, p)}};
            if (standard) values.emplace_back("closed_form", radial_coefficient_A_closed(m.as_power()->C, p));
            text = render_scalar("A", {{"C", C}, {"delta", double(delta)}, {"n", double(n)}, {"lambda", p.lambda()}}, values, g_);
            return kExitPass;
        }
        const Int delta = tr_.delta.or_default(5), n = tr_.n.or_default(1);
        const KernelSpec m = parse_kernel(tr_.m.or_default("power:6:1"));
        if (curve) {
            text = render_curve("lambda", *curve, [&](double l) { return F2_theta_integral(delta, n, l, m); });
            return kExitPass;
        }
        const double lambda = tr_.lambda.or_default(-1.0);
        const std::complex<double> F = F_theorem12(delta, n, lambda, m);
        const double F2 = F2_theta_integral(delta, n, lambda, m);
        text = render_scalar("F12", {{"delta", double(delta)}, {"n", double(n)}, {"lambda", lambda}},
                             {{"F_re", F.real()}, {"F_im", F.imag()}, {"F2", F2}}, g_);
        return kExitPass;
    }

    // lfun ----------------------------------------------------------------
    void setup_lfun() {
        lfun_ = app_.add_subcommand("lfun", "Evaluate zeta, Hurwitz zeta, Dirichlet or Zagier L-functions");
        lfun_->fallthrough();
        lfun_->add_option("function", lf_.function, "zeta | hurwitz | dirichlet | zagier | zagier_star | zagier_series")
            ->required()
            ->check(CLI::IsMember({"zeta", "hurwitz", "dirichlet", "zagier", "zagier_star", "zagier_series"}));
        lfun_->add_option("--s", lf_.s, "Real part of s")->required();
        lfun_->add_option("--s-imag", lf_.s_imag, "Imaginary part of s");
        add(lfun_, lf_.a, "--a", "hurwitz: shift in (0, 1]");
        add(lfun_, lf_.D, "--D", "dirichlet: fundamental discriminant");
        add(lfun_, lf_.delta, "--delta", "zagier*: discriminant");
        add(lfun_, lf_.qmax, "--qmax", "zagier_series: length (default 100000)");
    }

    int run_lfun(std::string& text) {
        const Complex s(lf_.s, lf_.s_imag);
        const std::string& fn = lf_.function;
        NamedValues inputs{{"s_re", s.real()}, {"s_im", s.imag()}};
        NamedValues values;
        auto put = [&](Complex v) {
            values.emplace_back("re", v.real());
            values.emplace_back("im", v.imag());
        };
        if (fn == "zeta") {
            put(riemann_zeta(s));
        } else if (fn == "hurwitz") {
            const double a = lf_.a.get(fn);
            if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("hurwitz: a must lie in (0, 1]");
            inputs.emplace_back("a", a);
            put(hurwitz_zeta(s, a));
        } else if (fn == "dirichlet") {
            const Int D = lf_.D.get(fn);
            if (!is_fundamental(D)) throw std::invalid_argument("dirichlet: D must be a fundamental discriminant");
            inputs.emplace_back("D", double(D));
            put(dirichlet_L(s, D));
        } else if (fn == "zagier" || fn == "zagier_star") {
            const Int delta = lf_.delta.get(fn);
            inputs.emplace_back("delta", double(delta));
            put(fn == "zagier" ? zagier_L(s, delta) : zagier_L_star(s, delta));
        } else {
            const Int delta = lf_.delta.get(fn), qmax = lf_.qmax.or_default(100000);
            inputs.emplace_back("delta", double(delta));
            inputs.emplace_back("q_max", double(qmax));
            const ZagierSeries z = zagier_L_series(s, delta, qmax);
            put(z.value);
            values.emplace_back("partial_re", z.partial.real());
            values.emplace_back("partial_im", z.partial.imag());
            values.emplace_back("tail_estimate", z.tail_estimate);
        }
        text = render_scalar(fn, inputs, values, g_);
        return kExitPass;
    }

    // selftest ------------------------------------------------------------
    void setup_selftest() {
        selftest_ = app_.add_subcommand("selftest", "Quick battery of identities plus seeded invariance probes");
        selftest_->fallthrough();
        selftest_->add_option("--probes", probes_, "Random cases per invariance probe")->check(CLI::Range(1, 100000));
    }

    // Random forms of negative discriminant acted on by random unimodular
    // matrices; the canonical form and omega_D must not move.
    VerificationReport invariance_probe() const {
        std::mt19937_64 rng(g_.seed);
        std::uniform_int_distribution<Int> coef(-6, 6), step(0, 2);
        int failures = 0, tried = 0;
        while (tried < probes_) {
            const BinaryQF q{coef(rng), coef(rng), coef(rng)};
            if (q.discriminant() >= 0) continue;
            UnimodularMatrix tau;
            for (int k = 0; k < 8; ++k) {
                const Int s = step(rng);
                tau = tau * (s == 0 ? UnimodularMatrix::S() : s == 1 ? UnimodularMatrix::T() : UnimodularMatrix::T_inv());
            }
            ++tried;
            const BinaryQF moved = act(q, tau);
            if (reduce_definite(moved).form != reduce_definite(q).form) ++failures;
            const Int d = q.discriminant();
            for (Int D : {-4, -3, 5, 8, -8, 12})
                if (is_valid_character_pair(D, d) && omega(D, moved) != omega(D, q)) ++failures;
        }
        VerificationReport r = make_report("invariance", {{"seed", double(g_.seed)}, {"probes", double(probes_)}}, failures, 0.0, g_.pol);
        return r;
    }

    int run_selftest(std::string& text) {
        auto cases = quick_battery(g_.pol);
        auto outs = run_cases(cases, g_.jobs, tol_override());
        const auto probe = invariance_probe();
        outs.push_back({probe, 0.0, probe.lhs == 0.0});
        text = render_outcomes(outs, g_, true);
        for (const auto& o : outs)
            if (!o.pass) return kExitToleranceFailure;
        return kExitPass;
    }

    CLI::App app_;
    Globals g_;
    std::map<std::string, CLI::Option*> config_keys_;
    CLI::App* classtable_ = nullptr;
    CLI::App* verify_ = nullptr;
    CLI::App* transform_ = nullptr;
    CLI::App* lfun_ = nullptr;
    CLI::App* selftest_ = nullptr;

    struct {
        std::string d1, d2, t;
        Int D1 = 1, D2 = 1;
    } ct_;
    struct {
        std::string identity;
        bool all = false;
        Param<std::string> preset;
        Param<double> C, tau1, tau2, X, s, z, Phi;
        Param<Int> t1, n1, D1, t2, n2, D2, t, n, D, delta, q, qmax;
    } v_;
    struct {
        std::string kind;
        Param<std::string> chi, m1, m2, m, curve;
        Param<double> y, tau1, tau2, Phi, C, tau, lambda;
        Param<Int> delta, n;
    } tr_;
    struct {
        std::string function;
        double s = 0.0, s_imag = 0.0;
        Param<double> a;
        Param<Int> D, delta, qmax;
    } lf_;
    int probes_ = 200;
};

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key or value");
        if (!out.emplace(key, value).second) throw std::invalid_argument("config: duplicate key '" + key + "'");
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Tool tool;
    return tool.main(args, out, err);
}

}  // namespace qfkit::cli
