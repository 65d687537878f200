#pragma once

#include <complex>

namespace qfkit {

// Gauss hypergeometric function 2F1(a, b; c; x) for real x < 1.
//  x in [0, 1/2]: direct series.
//  x < 0: Pfaff, F(a,b;c;x) = (1-x)^{-a} F(a, c-b; c; x/(x-1)).
//  argument in (1/2, 1): Taylor re-expansion of the hypergeometric ODE from 1/2,
//  halving the distance to 1 each step. This covers c - a - b in Z (the
//  logarithmic cases) without special formulas.
// Terminating series (a or b a nonpositive integer) are summed directly for any x.
std::complex<double> gauss_2f1(std::complex<double> a, std::complex<double> b, std::complex<double> c, double x);

// Direct power series, |x| < 1.
std::complex<double> gauss_2f1_series(std::complex<double> a, std::complex<double> b, std::complex<double> c, double x);

// Connection formula around x = 1 for x in (0, 1); requires c - a - b at least
// 1e-3 away from every integer.
std::complex<double> gauss_2f1_linear(std::complex<double> a, std::complex<double> b, std::complex<double> c, double x);

}  // namespace qfkit
