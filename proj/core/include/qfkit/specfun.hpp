#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "qfkit/checked.hpp"
#include "qfkit/quadrature.hpp"
#include "qfkit/qf.hpp"

namespace qfkit {

// m(y) = (1 + scale y)^-C
struct PowerKernel {
    double C;
    double scale;
};
// m(y) = exp(-(y / sigma)^2)
struct GaussianKernel {
    double sigma;
};
struct ZeroKernel {};

class KernelSpec {
public:
    KernelSpec() : family_(ZeroKernel{}) {}
    static KernelSpec power(double C, double scale);
    static KernelSpec gaussian(double sigma);
    static KernelSpec zero() { return KernelSpec(); }
    // PowerKernel with scale 4n/|delta|: m(|delta| r(r+1)/n) = (2r+1)^{-2C}.
    static KernelSpec standard(double C, Int delta, Int n);

    double operator()(double y) const;
    bool is_zero() const { return std::holds_alternative<ZeroKernel>(family_); }
    const PowerKernel* as_power() const { return std::get_if<PowerKernel>(&family_); }
    // m(u)(1 + u)^E bounded for E = kKernelE.
    bool decays_fast_enough() const;
    std::string describe() const;

private:
    explicit KernelSpec(std::variant<PowerKernel, GaussianKernel, ZeroKernel> f) : family_(f) {}
    std::variant<PowerKernel, GaussianKernel, ZeroKernel> family_;
};

// Fixed decay exponent demanded of admissible kernels; PowerKernel needs C >= E/2.
inline constexpr double kKernelE = 12.0;

// chi(z) = exp(-z^2 / sigma^2)
struct GaussianChi {
    double sigma = 1.0;
    double operator()(double z) const;
};

// Eigenvalue lambda of the radial Laplacian with s = 1/2 + i tau and
// lambda = s(s - 1) = -1/4 - tau^2. Real tau >= 0 gives lambda <= -1/4; real
// s in [1/2, 1] covers -1/4 <= lambda <= 0 and s > 1 covers lambda > 0
// (Eisenstein series at real s).
class SpectralParam {
public:
    static SpectralParam from_tau(double tau);
    static SpectralParam from_lambda(double lambda);
    static SpectralParam flat() { return from_lambda(0.0); }

    double lambda() const { return lambda_; }
    std::complex<double> s() const { return s_; }
    bool is_flat() const { return lambda_ == 0.0; }

private:
    SpectralParam(double lambda, std::complex<double> s) : lambda_(lambda), s_(s) {}
    double lambda_;
    std::complex<double> s_;
};

// |Gamma(1/4 + iz) Gamma(3/4 + iz) / Gamma(2iz)|^2, via log_gamma.
double T_weight(double z);

// g(r) = F(s, 1 - s; 1; -sinh^2(r/2)); g(0) = 1, g'' + coth(r) g' = lambda g.
double g_lambda(double r, const SpectralParam& p);

// int_0^inf m(|delta| x / 4n) F(s/2, (1-s)/2; 1; -x) dx / (2 sqrt(1 + x)).
double radial_coefficient_A(const KernelSpec& m, Int delta, Int n, const SpectralParam& p, QuadOptions opts = {});
// Value of radial_coefficient_A for KernelSpec::standard(C, delta, n):
// Gamma(C - 1/2 + s/2) Gamma(C - s/2) / (2 Gamma(C) Gamma(C + 1/2)).
double radial_coefficient_A_closed(double C, const SpectralParam& p);

// (1/2pi) int_0^inf T_weight(z) F(1/4 - iz, 1/4 + iz; 1; -y) chi(z) dz.
// The z-range is cut where sigma^2 exp(-Z^2/sigma^2) (a bound for the rest,
// using |F| <= 1 and T_weight(z) <= 4 pi z) drops below abs_tol / 10.
double T_transform(const GaussianChi& chi, double y, QuadOptions opts = {});

// The pair integral over (r1, r2) in R+^2 of
// m1((4 - tau1^2) r1(r1+1)) m2((4 - tau2^2) r2(r2+1)) / sqrt(2 Phi (2r1+1)(2r2+1) - Phi^2 - (2r1+1)^2 - (2r2+1)^2 + 1).
// With 2r1 + 1 = cosh(alpha), Phi = cosh(beta) the r2-range is
// [cosh(alpha - beta), cosh(alpha + beta)] for 2r2 + 1, and the substitution
// 2r2 + 1 = a + (b - a) sin^2(theta) turns the inner integral into
// int_0^{pi/2} m2(...) d theta.
double L_pair_integral(double tau1, double tau2, double Phi, const KernelSpec& m1, const KernelSpec& m2,
                       QuadOptions opts = {1e-12, 1e-10, 4000});
// Same integral when m2((4 - tau2^2) r(r+1)) = (2r+1)^{-2C}: the inner
// integral is (pi/2) (R Phi)^{-2C} F(C + 1/2, C; 1; (Phi^2-1)(R^2-1)/(R^2 Phi^2)), R = 2r1 + 1.
double L_pair_semi_closed(double tau1, double Phi, const KernelSpec& m1, double C, QuadOptions opts = {1e-12, 1e-10, 4000});

// int_0^inf F(1/4 - iz, 1/4 + iz; 1; -x) F(C + 1/2, C; 1; (Phi^2-1) x / (Phi^2 (1+x))) (1+x)^{-C-1/2} dx
double lemma41_lhs(double z, double C, double Phi, QuadOptions opts = {1e-12, 1e-10, 4000});
// Gamma(C - 1/4 + iz) Gamma(C - 1/4 - iz) / (Gamma(C) Gamma(C + 1/2)) Phi^{2C} F(1/4 - iz, 1/4 + iz; 1; 1 - Phi^2)
double lemma41_rhs(double z, double C, double Phi);

// Even and odd solutions of f'' = lambda f / cos^2(theta) with f(0) = 1,
// f'(0) = 0 and h(0) = 0, h'(0) = 1.
struct OdePair {
    double f, df, h, dh;
};
OdePair ode_pair_f_h(double theta, double lambda, double tol = 1e-13);

// I = int_{-pi/2}^{pi/2} m(delta / (4n cos^2 theta)) sqrt(1 + 4n/delta) / (1 + (4n/delta) cos^2 theta)
//     h_lambda(theta) sin(theta) / cos(theta) d theta
// F_theorem12 = 48 sqrt(pi) i I and F2_theta_integral = -4 I. The integrand is even; by
// default [0, pi/2) is integrated and doubled, full_range integrates both halves.
// The last 1e-3 before pi/2 is dropped; the kernel bound makes it negligible.
double theta_weight_integral(Int delta, Int n, double lambda, const KernelSpec& m, QuadOptions opts = {},
                          bool full_range = false);
std::complex<double> F_theorem12(Int delta, Int n, double lambda, const KernelSpec& m, QuadOptions opts = {});
double F2_theta_integral(Int delta, Int n, double lambda, const KernelSpec& m, QuadOptions opts = {});

// (z - conj w)^2 / |z - conj w|^2
std::complex<double> point_pair_h(const UpperHalfPoint& z, const UpperHalfPoint& w);

}  // namespace qfkit
