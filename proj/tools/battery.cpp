#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "cli.hpp"
#include "qfkit/genus.hpp"
#include "qfkit/geometric.hpp"

namespace qfkit::cli {

namespace {

MSpec standard_spec(Int t, Int n, Int D, double C) {
    return {t, n, D, KernelSpec::standard(C, checked::sub(checked::mul(t, t), checked::mul(4, n)), n)};
}

VerifyCase inner_product_case(Int t1, Int t2, const TruncationPolicy& pol) {
    return {"lemma22", [=] { return inner_product_check(standard_spec(t1, 1, 1, 6.0), standard_spec(t2, 1, 1, 6.0), pol); }};
}

}  // namespace

double default_tolerance(const std::string& identity) {
    if (identity == "lemma22") return 5e-3;
    if (identity == "lemma25") return 1e-3;
    if (identity == "lemma26") return 1e-3;
    if (identity == "lemma33") return 0.0;
    if (identity == "lemma35i") return 1e-4;
    if (identity == "lemma35ii") return 1e-8;
    if (identity == "lemma41") return 1e-6;
    if (identity == "zagier") return 1e-5;
    throw std::invalid_argument("unknown identity '" + identity + "'");
}

std::vector<VerifyCase> full_battery(const TruncationPolicy& pol) {
    std::vector<VerifyCase> cases;
    for (auto [D, delta, q] : std::vector<std::tuple<Int, Int, Int>>{{1, -4, 6}, {5, -20, 6}, {-3, -12, 4}, {8, -32, 24}, {-4, -36, 60}})
        cases.push_back({"lemma33", [=] { return convolution_check(D, delta, q); }});
    for (double z : {0.0, 0.5, 1.0})
        for (double C : {2.0, 3.5})
            for (double Phi : {1.1, 2.0, 5.0})
                cases.push_back({"lemma41", [=] { return hypergeometric_pairing_check(z, C, Phi); }});
    for (double s : {2.0, 1.5})
        for (Int delta : {-3, -4, -7, -8, -11, -15, -16, -20, 5, 8, 12, 13, 9})
            cases.push_back({"zagier", [=] { return zagier_series_check(delta, s); }});
    for (Int delta : {-3, -4, -7, -8, -15, -20, -24})
        for (Int D = 1; D <= -delta; ++D)
            if (is_valid_character_pair(D, delta))
                cases.push_back({"lemma35ii", [=] { return heegner_mass_check(delta, D); }});
    for (double s : {2.0, 3.0})
        for (auto [delta, D] : std::vector<std::pair<Int, Int>>{{-4, 1}, {-20, 5}, {-3, 1}, {-8, 1}, {-24, 8}, {-15, 5}})
            cases.push_back({"lemma35i", [=] { return heegner_eisenstein_check(delta, D, s, pol); }});
    const auto m = KernelSpec::power(6.0, 1.0);
    for (auto [tau1, tau2, X] : std::vector<std::tuple<double, double, double>>{
             {0.0, 0.0, 0.0}, {0.3, 1.2, 0.0}, {0.0, 1.0, 1.0}, {0.0, 1.0, 0.5}, {1.0, -0.5, 1.0}})
        cases.push_back({"lemma25", [=] { return lemma25_check(tau1, tau2, X, m, m); }});
    for (auto [t, n, D] : std::vector<std::tuple<Int, Int, Int>>{{0, 1, 1}, {1, 1, 1}, {0, 5, 5}})
        cases.push_back({"lemma26", [=] { return eisenstein_pairing_check(standard_spec(t, n, D, 6.0), 2.0, pol); }});
    cases.push_back(inner_product_case(0, 0, pol));
    cases.push_back(inner_product_case(1, 0, pol));
    cases.push_back(inner_product_case(1, 1, pol));
    return cases;
}

std::vector<VerifyCase> quick_battery(const TruncationPolicy& pol) {
    const auto m = KernelSpec::power(6.0, 1.0);
    return {
        {"lemma33", [] { return convolution_check(5, -20, 6); }},
        {"lemma41", [] { return hypergeometric_pairing_check(0.5, 3.5, 2.0); }},
        {"zagier", [] { return zagier_series_check(-4, 2.0); }},
        {"lemma35ii", [] { return heegner_mass_check(-4, 1); }},
        {"lemma35ii", [] { return heegner_mass_check(-20, 5); }},
        {"lemma35i", [=] { return heegner_eisenstein_check(-4, 1, 2.0, pol); }},
        {"lemma25", [=] { return lemma25_check(0.0, 1.0, 1.0, m, m); }},
        inner_product_case(1, 1, pol),
    };
}

std::vector<CaseOutcome> run_cases(const std::vector<VerifyCase>& cases, int jobs, std::optional<double> tol) {
    if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
    std::vector<std::optional<VerificationReport>> reports(cases.size());
    std::vector<std::exception_ptr> errors(cases.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases.size(); i = next++) {
            try {
                reports[i] = cases[i].run();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t nthreads = std::min<std::size_t>(std::size_t(jobs), cases.size());
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::vector<CaseOutcome> out;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        const double t = tol.value_or(default_tolerance(cases[i].identity));
        out.push_back({*reports[i], t, reports[i]->within(t)});
    }
    return out;
}

}  // namespace qfkit::cli
