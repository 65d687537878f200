#pragma once

#include <cstdint>

#include "qfkit/pairs.hpp"
#include "qfkit/qf.hpp"
#include "qfkit/quadrature.hpp"
#include "qfkit/report.hpp"
#include "qfkit/specfun.hpp"

namespace qfkit {

// Data of M_{t,n,D,m}(z) = sum over gamma in Gamma_{n,t} of omega_D(gamma) m(u(z, gamma z)).
struct MSpec {
    Int t = 0;
    Int n = 1;
    Int D = 1;
    KernelSpec m;

    Int delta() const { return checked::sub(checked::mul(t, t), checked::mul(4, n)); }
    // n > 0, delta < 0, (D, delta) a valid character pair.
    void validate() const;
};

struct MValue {
    double value;
    Int terms;         // orbit points with u <= u_max
    double tail_bound; // sup of m beyond u_max times a crude count
};
MValue M_function_detail(const MSpec& spec, const UpperHalfPoint& z, const TruncationPolicy& pol = {});
double M_function(const MSpec& spec, const UpperHalfPoint& z, const TruncationPolicy& pol = {});

// Integral of f(z) dx dy / y^2 over the standard fundamental domain cut at
// y <= y_max: outer x in [-1/2, 1/2], inner y in [sqrt(1 - x^2), y_max].
double fundamental_domain_integral(const std::function<double(const UpperHalfPoint&)>& f, double y_max,
                                   QuadOptions opts = {1e-12, 1e-7, 4000});

double geometric_inner_product(const MSpec& s1, const MSpec& s2, const TruncationPolicy& pol = {},
                               QuadOptions opts = {1e-12, 1e-7, 4000});

struct ElementarySide {
    double e_part = 0.0;      // 4 pi E int m1 m2 dr
    double class_part = 0.0;  // 8 sum_f h L
    Rational e_term{0};
    Int f_last = 0;           // largest |f| summed
    int nonzero_terms = 0;
    double value() const { return e_part + class_part; }
};
// Without f_max the |f|-sum stops once 10 consecutive |f| have
// 8 L(Phi_f) max(h(f) + h(-f), |f|) below 1e-12 of the running sum.
ElementarySide elementary_side(const MSpec& s1, const MSpec& s2, const TruncationPolicy& pol = {},
                               std::uint64_t seed = 0);

// Normalized elliptic matrix of trace tau fixing X + i (sign eps), with real entries.
struct RealMatrix {
    double a, b, c, d;
};
RealMatrix elliptic_fixing(double tau, double X, int eps);
// (d - a)(D - A) + 2bC + 2Bc over sqrt(4 - tr1^2) sqrt(4 - tr2^2).
double pair_invariant_F(const RealMatrix& g1, const RealMatrix& g2);
// Integral over H of m1(u(z, g1 z)) m2(u(z, g2 z)) in geodesic polar
// coordinates about i: (z - i)/(z + i) = tanh(R/2) e^{i phi}, dmu = sinh R dR dphi.
double hyperbolic_plane_integral(const RealMatrix& g1, const RealMatrix& g2, const KernelSpec& m1, const KernelSpec& m2,
                                 QuadOptions opts = {1e-13, 1e-8, 4000});

// Pair of elliptic elements with fixed points X + i and -X + i; X = 0 compares
// against 4 pi int m1 m2 dr, otherwise against 8 L(tau1, tau2, |F|).
VerificationReport lemma25_check(double tau1, double tau2, double X, const KernelSpec& m1, const KernelSpec& m2);

// Sum over Lambda_delta of omega_D(Q)/M_Q E(z_Q, s) vs 2 (|delta|/4)^{s/2} L(s, D) L(s, delta/D) / zeta(2s).
VerificationReport heegner_eisenstein_check(Int delta, Int D, double s, const TruncationPolicy& pol = {});
// Exact sum over Lambda_delta of omega_D(Q)/M_Q vs [D = 1] (2/pi) |delta|^{1/2} L(1, delta).
VerificationReport heegner_mass_check(Int delta, Int D);
Rational heegner_mass(Int delta, Int D);

// int_{F1} M(z) E(z, s) dmu vs (sum 2 pi omega/M_Q E(z_Q, s)) A(m, delta, n, s(s-1)).
VerificationReport eisenstein_pairing_check(const MSpec& spec, double s, const TruncationPolicy& pol = {});

VerificationReport inner_product_check(const MSpec& s1, const MSpec& s2, const TruncationPolicy& pol = {});
VerificationReport convolution_check(Int D, Int delta, Int q);
VerificationReport hypergeometric_pairing_check(double z, double C, double Phi);
VerificationReport zagier_series_check(Int delta, double s, Int q_max = 100000);

}  // namespace qfkit
