#pragma once

#include <complex>
#include <vector>

#include "qfkit/checked.hpp"

namespace qfkit {

using Complex = std::complex<double>;

// delta = D * l^2 with D fundamental (D = 1 when delta is a square).
struct DiscriminantSplit {
    Int D;
    Int l;
};
DiscriminantSplit split_discriminant(Int delta);

// Euler-Maclaurin parameters: N terms summed directly, M Bernoulli corrections.
// N = 0 selects N = 30 + ceil(|s|).
struct EulerMaclaurin {
    int N = 0;
    int M = 14;
};

// zeta(s, a) - 1/(s - 1); finite at s = 1 where it equals -psi(a).
Complex hurwitz_zeta_regular(Complex s, double a, EulerMaclaurin em = {});
// Throws pole_error for |s - 1| <= 1e-14.
Complex hurwitz_zeta(Complex s, double a, EulerMaclaurin em = {});
Complex riemann_zeta(Complex s, EulerMaclaurin em = {});

// L(s, chi_D) = |D|^-s sum_{a=1}^{|D|} chi_D(a) zeta(s, a/|D|); the pole terms
// cancel exactly for D != 1, so s = 1 is allowed there.
Complex dirichlet_L(Complex s, Int D);

// Closed form L(s, chi_D) l^{1/2-s} sum_{l1 l2 = l} chi_D(l1) mu(l1) l1^{-1/2} tau_s(l2)
// with tau_s(k) = k^{s-1/2} sum_{a | k} a^{1-2s}.
Complex zagier_L(Complex s, Int delta);
Complex zagier_L_star(Complex s, Int delta);

// #{r mod 2q : r^2 = delta (mod 4q)}, by direct residue scan.
Int sqrt_count_mod4q(Int delta, Int q);
// The same counts for q = 0..q_max (entry 0 unused), via multiplicativity.
std::vector<Int> sqrt_counts_up_to(Int delta, Int q_max);

struct ZagierSeries {
    Complex partial;         // zeta(2s)/zeta(s) sum_{q <= q_max} N(q) q^-s
    Complex value;           // partial plus the fitted tail
    double tail_estimate;    // |value - partial|
};
// Truncated Dirichlet series. The tail sum_{q > Q} N(q) q^-s is estimated by
// Abel summation against a least-squares fit A(x) ~ x (c1 log x + c2) of the
// partial sums on [Q/4, Q] (c1 is fitted only for square delta, where the
// series has a double pole at s = 1).
ZagierSeries zagier_L_series(Complex s, Int delta, Int q_max);

}  // namespace qfkit
