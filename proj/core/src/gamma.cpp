#include "qfkit/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qfkit/errors.hpp"

namespace qfkit {

namespace {

using C = std::complex<double>;

// B_{2k} / (2k (2k - 1)), k = 1..10
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0};

// Stirling series, |s| >= 15 and Re s > 0.
C stirling(C s) {
    const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    C out = (s - 0.5) * std::log(s) - s + half_log_2pi;
    const C inv = 1.0 / s;
    const C inv2 = inv * inv;
    C p = inv;
    for (double coeff : kStirling) {
        out += coeff * p;
        p *= inv2;
    }
    return out;
}

bool is_nonpositive_integer(C s) {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

}  // namespace

C log_gamma_continuous(C s) {
    if (is_nonpositive_integer(s)) throw pole_error("log_gamma: pole at a nonpositive integer");
    if (s.real() < 0.5) {
        // reflection: Gamma(s) Gamma(1 - s) = pi / sin(pi s)
        const double pi = std::numbers::pi;
        return std::log(pi) - std::log(std::sin(pi * s)) - log_gamma_continuous(1.0 - s);
    }
    C shift = 0.0;
    C z = s;
    while (std::abs(z) < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return stirling(z) - shift;
}

C log_gamma(C s) {
    C v = log_gamma_continuous(s);
    const double two_pi = 2.0 * std::numbers::pi;
    double im = std::remainder(v.imag(), two_pi);
    if (im <= -std::numbers::pi) im += two_pi;
    return {v.real(), im};
}

C gamma(C s) { return std::exp(log_gamma_continuous(s)); }

}  // namespace qfkit
