#pragma once

#include <complex>

#include "qfkit/qf.hpp"
#include "qfkit/report.hpp"

namespace qfkit {

struct EisensteinValue {
    std::complex<double> value;
    std::complex<double> tail;  // continuum estimate of the lattice points outside the box
};

// E(z, s) = (1/2) sum over coprime (c, d) of y^s / |cz + d|^{2s}, Re s > 1.
// Evaluated as the full lattice sum over 0 < max(|c|, |d|) <= eis_cutoff plus
// the integral of |cz + d|^{-2s} outside the square of half-width
// eis_cutoff + 1/2, divided by 2 zeta(2s).
EisensteinValue eisenstein_series(const UpperHalfPoint& z, std::complex<double> s, Int eis_cutoff = 400);
// Only the coprime pairs inside the box, no tail; a cross-check of the above.
std::complex<double> eisenstein_coprime_sum(const UpperHalfPoint& z, std::complex<double> s, Int eis_cutoff);
// Fourier expansion for real s > 1:
// y^s + phi(s) y^{1-s} + (4 sqrt y / theta(s)) sum_{n >= 1} n^{s-1/2} sigma_{1-2s}(n) K_{s-1/2}(2 pi n y) cos(2 pi n x),
// theta(s) = pi^{-s} Gamma(s) zeta(2s), phi(s) = theta(1 - s) / theta(s).
double eisenstein_fourier(const UpperHalfPoint& z, double s);

}  // namespace qfkit
