#pragma once

#include <vector>

#include "qfkit/qf.hpp"

namespace qfkit {

// Kronecker symbol (D/n) for arbitrary integers.
int kronecker(Int D, Int n);

bool is_fundamental(Int D);

// Precondition shared by omega and rho_q: D fundamental, D | delta, delta/D = 0,1 (mod 4).
bool is_valid_character_pair(Int D, Int delta);

// Genus character: 0 if gcd(a, b, c, D) > 1, otherwise (D/r) for the first
// value r = q(x, y) coprime to D, scanning shells max(|x|,|y|) = 1, 2, ...
// with (x, y) in lexicographic order inside each shell.
int omega(Int D, const BinaryQF& q);
int omega_matrix(Int D, const IntegerMatrix& g);

// The first `count` distinct values coprime to D in omega's scan order.
std::vector<Int> represented_coprime_values(Int D, const BinaryQF& q, int count);

// Sum over r in [0, 2q) with r^2 = delta (mod 4q) of omega_D(q X^2 + r XY + ((r^2 - delta)/4q) Y^2).
Int rho_q(Int D, Int delta, Int q);

struct ConvolutionSides {
    Int lhs;  // sum_{q1 q2 = q} mu(q2) (D/q2) rho_{q1}(D, delta)
    Int rhs;  // sum_{q1 q2 = q} mu(q2) rho_{q1}(1, delta/D)
    bool equal() const { return lhs == rhs; }
};
ConvolutionSides check_convolution_identity(Int D, Int delta, Int q);

int mobius_mu(Int n);
std::vector<Int> divisors(Int n);  // ascending, n > 0
std::vector<std::pair<Int, int>> factorize(Int n);  // n > 0

}  // namespace qfkit
