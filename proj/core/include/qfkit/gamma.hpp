#pragma once

#include <complex>

namespace qfkit {

// A logarithm of Gamma(s): exp of the result is Gamma(s). For Re s >= 1/2 it is
// the branch continuous in the right half-plane. Throws pole_error at
// nonpositive integers.
std::complex<double> log_gamma_continuous(std::complex<double> s);

// Principal logarithm of Gamma(s): imaginary part in (-pi, pi].
std::complex<double> log_gamma(std::complex<double> s);

std::complex<double> gamma(std::complex<double> s);

}  // namespace qfkit
