#include "qfkit/hypergeometric.hpp"

#include <cmath>
#include <stdexcept>

#include "qfkit/errors.hpp"
#include "qfkit/gamma.hpp"

namespace qfkit {

namespace {

using C = std::complex<double>;

constexpr int kMaxTerms = 20000;

bool nonpositive_integer(C z) {
    if (std::abs(z.imag()) > 0.0 || z.real() > 0.5) return false;
    return std::abs(z.real() - std::round(z.real())) < 1e-14;
}

C rgamma(C z) {
    if (nonpositive_integer(z)) return 0.0;
    return std::exp(-log_gamma_continuous(z));
}

// (1-x)^{-a}, x < 1, via the real logarithm.
C one_minus_pow(double one_minus_x, C a) { return std::exp(-a * std::log(one_minus_x)); }

struct Jet {
    C value;
    C derivative;
};

// One Taylor step of x(1-x)F'' + (c - (a+b+1)x)F' - ab F = 0 from x0 = 1 - e0
// to x0 + h, |h| <= e0/2. Coefficients are scaled by h^k.
Jet taylor_step(C a, C b, C c, double x0, double e0, Jet at, double h) {
    const double p0 = x0 * e0;
    const double p1 = e0 - x0;
    const C q0 = c - (a + b + 1.0) * x0;
    const C q1 = -(a + b + 1.0);
    const C ab = a * b;
    C dk = at.value;
    C dk1 = at.derivative * h;
    C sum = dk + dk1;
    C dsum = dk1;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double kd = k;
        const C num = (p1 * (kd + 1.0) * kd + q0 * (kd + 1.0)) * h * dk1 + (-kd * (kd - 1.0) + q1 * kd - ab) * h * h * dk;
        const C dk2 = -num / (p0 * (kd + 2.0) * (kd + 1.0));
        sum += dk2;
        dsum += (kd + 2.0) * dk2;
        if (k > 6 && std::abs(dk1) + std::abs(dk2) <= 1e-18 * (std::abs(sum) + 1e-300)) return {sum, dsum / h};
        dk = dk1;
        dk1 = dk2;
    }
    throw numerical_error("gauss_2f1: Taylor continuation did not converge");
}

// F(a,b;c;y) for y in [0, 1) given e = 1 - y exactly.
C unit_interval(C a, C b, C c, double y, double e) {
    if (y <= 0.5) return gauss_2f1_series(a, b, c, y);
    Jet jet{gauss_2f1_series(a, b, c, 0.5), a * b / c * gauss_2f1_series(a + 1.0, b + 1.0, c + 1.0, 0.5)};
    double e0 = 0.5;
    while (e < 0.5 * e0) {
        const double e1 = 0.5 * e0;
        jet = taylor_step(a, b, c, 1.0 - e0, e0, jet, e0 - e1);
        e0 = e1;
    }
    return taylor_step(a, b, c, 1.0 - e0, e0, jet, e0 - e).value;
}

}  // namespace

C gauss_2f1_series(C a, C b, C c, double x) {
    if (nonpositive_integer(c)) throw std::invalid_argument("gauss_2f1: c is a nonpositive integer");
    const bool terminating = nonpositive_integer(a) || nonpositive_integer(b);
    if (!terminating && !(std::abs(x) < 1.0)) throw std::invalid_argument("gauss_2f1_series: requires |x| < 1");
    C term = 1.0;
    C sum = 1.0;
    for (int k = 0; k < kMaxTerms; ++k) {
        const double kd = k;
        const C ratio = (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x;
        term *= ratio;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(ratio) < 1.0 && std::abs(term) <= 1e-17 * std::abs(sum)) return sum;
    }
    throw numerical_error("gauss_2f1: series did not converge");
}

C gauss_2f1(C a, C b, C c, double x) {
    if (nonpositive_integer(c)) throw std::invalid_argument("gauss_2f1: c is a nonpositive integer");
    if (!(x < 1.0)) throw std::invalid_argument("gauss_2f1: requires x < 1");
    if (x == 0.0) return 1.0;
    if (nonpositive_integer(a) || nonpositive_integer(b)) return gauss_2f1_series(a, b, c, x);
    if (x < 0.0) {
        const double omx = 1.0 - x;
        const double y = -x / omx;
        return one_minus_pow(omx, a) * unit_interval(a, c - b, c, y, 1.0 / omx);
    }
    return unit_interval(a, b, c, x, 1.0 - x);
}

C gauss_2f1_linear(C a, C b, C c, double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("gauss_2f1_linear: requires 0 < x < 1");
    const C g = c - a - b;
    if (std::abs(g.imag()) < 1e-3 && std::abs(g.real() - std::round(g.real())) < 1e-3)
        throw std::invalid_argument("gauss_2f1_linear: c - a - b too close to an integer");
    const double w = 1.0 - x;
    const C lgc = log_gamma_continuous(c);
    const C t1 = std::exp(lgc + log_gamma_continuous(g)) * rgamma(c - a) * rgamma(c - b) *
                 gauss_2f1_series(a, b, 1.0 - g, w);
    const C t2 = std::exp(lgc + log_gamma_continuous(-g)) * rgamma(a) * rgamma(b) *
                 std::exp(g * std::log(w)) * gauss_2f1_series(c - a, c - b, g + 1.0, w);
    return t1 + t2;
}

}  // namespace qfkit
