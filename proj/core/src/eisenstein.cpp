#include "qfkit/eisenstein.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qfkit/gamma.hpp"
#include "qfkit/lfun.hpp"
#include "qfkit/quadrature.hpp"

namespace qfkit {

namespace {

constexpr double kPi = std::numbers::pi;

void require_convergent(std::complex<double> s) {
    if (!(s.real() > 1.0)) throw std::invalid_argument("eisenstein: requires Re s > 1");
}

// q^{-s} for q > 0; real s takes the cheaper path.
std::complex<double> neg_power(double q, std::complex<double> s) {
    if (s.imag() == 0.0) return std::pow(q, -s.real());
    return std::exp(-s * std::log(q));
}

}  // namespace

EisensteinValue eisenstein_series(const UpperHalfPoint& z, std::complex<double> s, Int N) {
    require_convergent(s);
    if (N < 1) throw std::invalid_argument("eisenstein_series: cutoff must be positive");
    const double x = z.x(), y = z.y();
    // pairs (c, d) and (-c, -d) agree: sum over c > 0 and over c = 0, d > 0, then double
    std::complex<double> lattice = 0.0;
    for (Int c = N; c >= 1; --c) {
        const double cx = double(c) * x, cy2 = double(c) * double(c) * y * y;
        std::complex<double> row = 0.0;
        for (Int d = -N; d <= N; ++d) {
            const double re = cx + double(d);
            row += neg_power(re * re + cy2, s);
        }
        lattice += row;
    }
    for (Int d = N; d >= 1; --d) lattice += neg_power(double(d) * double(d), s);
    lattice *= 2.0;

    // continuum beyond the square of half-width L, in polar coordinates (c, d) = rho (cos t, sin t):
    // int q(t)^{-s} (L / max(|cos t|, |sin t|))^{2 - 2s} / (2s - 2) dt, q(t) = |z cos t + sin t|^2
    const double L = double(N) + 0.5;
    auto integrand = [&](double t) {
        const double ct = std::cos(t), st = std::sin(t);
        const double re = x * ct + st;
        const double q = re * re + y * y * ct * ct;
        const double mx = std::max(std::abs(ct), std::abs(st));
        return neg_power(q, s) * neg_power(L / mx, 2.0 * s - 2.0) / (2.0 * s - 2.0);
    };
    std::complex<double> tail = 0.0;
    const QuadOptions opts{1e-300, 1e-12, 2000};
    for (int k = 0; k < 4; ++k) {
        const double a = k * kPi / 4.0, b = (k + 1) * kPi / 4.0;
        const double re = integrate([&](double t) { return integrand(t).real(); }, a, b, opts).value;
        const double im = integrate([&](double t) { return integrand(t).imag(); }, a, b, opts).value;
        tail += std::complex<double>(re, im);
    }
    tail *= 2.0;  // t and t + pi give the same contribution

    const std::complex<double> pref = std::pow(std::complex<double>(y), s) / (2.0 * riemann_zeta(2.0 * s));
    return {pref * (lattice + tail), pref * tail};
}

std::complex<double> eisenstein_coprime_sum(const UpperHalfPoint& z, std::complex<double> s, Int N) {
    require_convergent(s);
    if (N < 1) throw std::invalid_argument("eisenstein_coprime_sum: cutoff must be positive");
    const double x = z.x(), y = z.y();
    std::complex<double> sum = 1.0;  // (c, d) = (0, +-1), halved
    for (Int c = N; c >= 1; --c) {
        const double cx = double(c) * x, cy2 = double(c) * double(c) * y * y;
        for (Int d = -N; d <= N; ++d) {
            if (std::gcd(c, d) != 1) continue;
            const double re = cx + double(d);
            sum += neg_power(re * re + cy2, s);
        }
    }
    return sum * std::pow(std::complex<double>(y), s);
}

double eisenstein_fourier(const UpperHalfPoint& z, double s) {
    require_convergent(s);
    const double x = z.x(), y = z.y();
    const double zeta2s = riemann_zeta(2.0 * s).real();
    const double theta = std::pow(kPi, -s) * gamma(s).real() * zeta2s;
    const double phi = std::sqrt(kPi) * gamma(s - 0.5).real() * riemann_zeta(2.0 * s - 1.0).real() / (gamma(s).real() * zeta2s);
    const double constant = std::pow(y, s) + phi * std::pow(y, 1.0 - s);
    const double nu = s - 0.5;
    const double pref = 4.0 * std::sqrt(y) / theta;
    double series = 0.0;
    for (Int n = 1;; ++n) {
        const double arg = 2.0 * kPi * double(n) * y;
        if (arg > 700.0) break;
        double sigma = 0.0;  // sigma_{1-2s}(n)
        for (Int d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            sigma += std::pow(double(d), 1.0 - 2.0 * s);
            if (d * d != n) sigma += std::pow(double(n / d), 1.0 - 2.0 * s);
        }
        const double term = std::pow(double(n), nu) * sigma * boost::math::cyl_bessel_k(nu, arg);
        series += term * std::cos(2.0 * kPi * double(n) * x);
        if (std::abs(pref * term) < 1e-18 * std::abs(constant)) break;
    }
    return constant + pref * series;
}

}  // namespace qfkit
