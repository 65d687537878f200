#include "qfkit/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qfkit/errors.hpp"
#include "qfkit/gamma.hpp"
#include "qfkit/hypergeometric.hpp"

namespace qfkit {

namespace {
using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;
}  // namespace

KernelSpec KernelSpec::power(double C, double scale) {
    if (!(C > 0.0) || !(scale > 0.0)) throw std::invalid_argument("PowerKernel: requires C > 0 and scale > 0");
    return KernelSpec(PowerKernel{C, scale});
}

KernelSpec KernelSpec::gaussian(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("GaussianKernel: requires sigma > 0");
    return KernelSpec(GaussianKernel{sigma});
}

KernelSpec KernelSpec::standard(double C, Int delta, Int n) {
    if (delta == 0 || n <= 0) throw std::invalid_argument("KernelSpec::standard: needs delta != 0, n > 0");
    return power(C, 4.0 * double(n) / std::abs(double(delta)));
}

double KernelSpec::operator()(double y) const {
    if (const auto* p = std::get_if<PowerKernel>(&family_)) return std::pow(1.0 + p->scale * y, -p->C);
    if (const auto* g = std::get_if<GaussianKernel>(&family_)) {
        const double r = y / g->sigma;
        return std::exp(-r * r);
    }
    return 0.0;
}

bool KernelSpec::decays_fast_enough() const {
    if (const auto* p = std::get_if<PowerKernel>(&family_)) return p->C >= kKernelE / 2.0;
    return true;
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (const auto* p = std::get_if<PowerKernel>(&family_)) {
        os << "power:" << p->C << ':' << p->scale;
    } else if (const auto* g = std::get_if<GaussianKernel>(&family_)) {
        os << "gaussian:" << g->sigma;
    } else {
        os << "zero";
    }
    return os.str();
}

double GaussianChi::operator()(double z) const { return std::exp(-(z * z) / (sigma * sigma)); }

SpectralParam SpectralParam::from_tau(double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("SpectralParam: tau must be >= 0");
    return {-0.25 - tau * tau, C(0.5, tau)};
}

SpectralParam SpectralParam::from_lambda(double lambda) {
    if (!std::isfinite(lambda)) throw std::invalid_argument("SpectralParam: lambda must be finite");
    if (lambda <= -0.25) return {lambda, C(0.5, std::sqrt(-0.25 - lambda))};
    return {lambda, C(0.5 + std::sqrt(0.25 + lambda), 0.0)};
}

double T_weight(double z) {
    if (z == 0.0) return 0.0;
    const C lg = log_gamma_continuous(C(0.25, z)) + log_gamma_continuous(C(0.75, z)) - log_gamma_continuous(C(0.0, 2.0 * z));
    return std::exp(2.0 * lg.real());
}

double g_lambda(double r, const SpectralParam& p) {
    if (!(r >= 0.0)) throw std::invalid_argument("g_lambda: r must be >= 0");
    if (p.is_flat() || r == 0.0) return 1.0;
    const double sh = std::sinh(0.5 * r);
    const C s = p.s();
    return gauss_2f1(s, 1.0 - s, 1.0, -sh * sh).real();
}

double radial_coefficient_A(const KernelSpec& m, Int delta, Int n, const SpectralParam& p, QuadOptions opts) {
    if (delta >= 0 || n <= 0) throw std::invalid_argument("radial_coefficient_A: needs delta < 0, n > 0");
    if (m.is_zero()) return 0.0;
    const C s = p.s();
    if (const auto* pk = m.as_power()) {
        const double need = 0.5 * std::max(s.real(), 1.0 - s.real());
        if (!(pk->C > need)) throw std::invalid_argument("radial_coefficient_A: kernel decay too slow for integrability");
    }
    const double scale = std::abs(double(delta)) / (4.0 * double(n));
    const C a = s / 2.0, b = (1.0 - s) / 2.0;
    auto f = [&](double x) {
        const double k = m(scale * x);
        if (k == 0.0) return 0.0;
        return k * gauss_2f1(a, b, 1.0, -x).real() / (2.0 * std::sqrt(1.0 + x));
    };
    return integrate_to_infinity(f, 0.0, opts).value;
}

double radial_coefficient_A_closed(double Cexp, const SpectralParam& p) {
    const C s = p.s();
    const C lg = log_gamma_continuous(Cexp - 0.5 + s / 2.0) + log_gamma_continuous(Cexp - s / 2.0) -
                 log_gamma_continuous(Cexp) - log_gamma_continuous(Cexp + 0.5);
    return 0.5 * std::exp(lg).real();
}

double T_transform(const GaussianChi& chi, double y, QuadOptions opts) {
    if (!(y >= 0.0)) throw std::invalid_argument("T_transform: y must be >= 0");
    if (!(chi.sigma > 0.0)) throw std::invalid_argument("T_transform: sigma must be positive");
    const double s2 = chi.sigma * chi.sigma;
    const double ratio = 10.0 * s2 / opts.abs_tol;
    const double zmax = chi.sigma * std::sqrt(std::log(std::max(ratio, 2.0)));
    auto f = [&](double z) {
        const double w = T_weight(z);
        if (w == 0.0) return 0.0;
        const double F = y == 0.0 ? 1.0 : gauss_2f1(C(0.25, -z), C(0.25, z), 1.0, -y).real();
        return w * F * chi(z) / (2.0 * kPi);
    };
    return integrate(f, 0.0, zmax, opts).value;
}

namespace {

void check_pair_args(double tau1, double tau2, double Phi) {
    if (!(std::abs(tau1) < 2.0) || !(std::abs(tau2) < 2.0)) throw std::invalid_argument("L_pair_integral: |tau| must be < 2");
    if (!(Phi > 1.0)) throw std::invalid_argument("L_pair_integral: Phi must be > 1");
}

}  // namespace

double L_pair_integral(double tau1, double tau2, double Phi, const KernelSpec& m1, const KernelSpec& m2, QuadOptions opts) {
    check_pair_args(tau1, tau2, Phi);
    if (m1.is_zero() || m2.is_zero()) return 0.0;
    const double beta = std::acosh(Phi);
    const double k1 = 4.0 - tau1 * tau1, k2 = 4.0 - tau2 * tau2;
    const double sb = std::sinh(beta);
    QuadOptions inner_opts = opts;
    inner_opts.rel_tol = opts.rel_tol * 0.1;
    inner_opts.abs_tol = opts.abs_tol * 0.1;
    auto outer = [&](double alpha) {
        const double sa = std::sinh(alpha);
        // r1 (r1 + 1) = sinh^2(alpha) / 4
        const double w1 = m1(k1 * sa * sa / 4.0);
        if (w1 == 0.0) return 0.0;
        const double sh = std::sinh(0.5 * (alpha - beta));
        const double a_minus_1 = 2.0 * sh * sh;
        const double spread = 2.0 * sa * sb;  // b - a
        auto inner = [&](double theta) {
            const double st = std::sin(theta);
            const double vm1 = a_minus_1 + spread * st * st;  // 2 r2 + 1 - 1
            return m2(k2 * vm1 * (vm1 + 2.0) / 4.0);
        };
        const double in = integrate(inner, 0.0, kPi / 2.0, inner_opts).value;
        return 0.5 * sa * w1 * in;
    };
    return integrate_to_infinity(outer, 0.0, opts).value;
}

double L_pair_semi_closed(double tau1, double Phi, const KernelSpec& m1, double Cexp, QuadOptions opts) {
    check_pair_args(tau1, 0.0, Phi);
    if (m1.is_zero()) return 0.0;
    const double k1 = 4.0 - tau1 * tau1;
    const double P2 = Phi * Phi;
    auto f = [&](double r1) {
        const double w1 = m1(k1 * r1 * (r1 + 1.0));
        if (w1 == 0.0) return 0.0;
        const double R = 2.0 * r1 + 1.0;
        const double R2m1 = 4.0 * r1 * (r1 + 1.0);
        const double w = (P2 - 1.0) * R2m1 / (R * R * P2);
        const double F = gauss_2f1(Cexp + 0.5, Cexp, 1.0, w).real();
        return w1 * (kPi / 2.0) * std::pow(R * Phi, -2.0 * Cexp) * F;
    };
    return integrate_to_infinity(f, 0.0, opts).value;
}

double lemma41_lhs(double z, double Cexp, double Phi, QuadOptions opts) {
    if (!(Cexp > 0.25) || !(Phi > 1.0)) throw std::invalid_argument("lemma41_lhs: needs C > 1/4, Phi > 1");
    const double P2 = Phi * Phi;
    auto f = [&](double x) {
        const double F1 = gauss_2f1(C(0.25, -z), C(0.25, z), 1.0, -x).real();
        const double w = (P2 - 1.0) * x / (P2 * (1.0 + x));
        const double F2 = gauss_2f1(Cexp + 0.5, Cexp, 1.0, w).real();
        return F1 * F2 * std::pow(1.0 + x, -Cexp - 0.5);
    };
    return integrate_to_infinity(f, 0.0, opts).value;
}

double lemma41_rhs(double z, double Cexp, double Phi) {
    if (!(Cexp > 0.25) || !(Phi > 1.0)) throw std::invalid_argument("lemma41_rhs: needs C > 1/4, Phi > 1");
    const double lg = 2.0 * log_gamma_continuous(C(Cexp - 0.25, z)).real() - log_gamma_continuous(Cexp).real() -
                      log_gamma_continuous(Cexp + 0.5).real();
    const double F = gauss_2f1(C(0.25, -z), C(0.25, z), 1.0, 1.0 - Phi * Phi).real();
    return std::exp(lg) * std::pow(Phi, 2.0 * Cexp) * F;
}

double theta_weight_integral(Int delta, Int n, double lambda, const KernelSpec& m, QuadOptions opts, bool full_range) {
    if (delta <= 0 || n <= 0) throw std::invalid_argument("theta_weight_integral: needs delta > 0, n > 0");
    if (!(lambda < 0.0)) throw std::invalid_argument("theta_weight_integral: lambda must be negative");
    if (m.is_zero()) return 0.0;
    const double ratio = 4.0 * double(n) / double(delta);
    const double pref = std::sqrt(1.0 + ratio);
    auto f = [&](double theta) {
        const double c = std::cos(theta);
        const double c2 = c * c;
        const double k = m(double(delta) / (4.0 * double(n) * c2));
        if (k == 0.0) return 0.0;
        const OdePair sol = ode_pair_f_h(theta, lambda);
        return k * pref / (1.0 + ratio * c2) * sol.h * std::sin(theta) / c;
    };
    const double edge = kPi / 2.0 - 1e-3;
    if (full_range) return integrate(f, -edge, edge, opts).value;
    return 2.0 * integrate(f, 0.0, edge, opts).value;
}

std::complex<double> F_theorem12(Int delta, Int n, double lambda, const KernelSpec& m, QuadOptions opts) {
    return C(0.0, 48.0 * std::sqrt(kPi)) * theta_weight_integral(delta, n, lambda, m, opts);
}

double F2_theta_integral(Int delta, Int n, double lambda, const KernelSpec& m, QuadOptions opts) {
    return -4.0 * theta_weight_integral(delta, n, lambda, m, opts);
}

std::complex<double> point_pair_h(const UpperHalfPoint& z, const UpperHalfPoint& w) {
    const C d = z.z() - std::conj(w.z());
    return d * d / std::norm(d);
}

}  // namespace qfkit
