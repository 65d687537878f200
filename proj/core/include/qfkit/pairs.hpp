#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/rational.hpp>

#include "qfkit/qf.hpp"

namespace qfkit {

using Rational = boost::rational<Int>;

// b1 b2 - 2 a1 c2 - 2 a2 c1; symmetric, codisc(q, q) = disc(q).
Int codiscriminant(const BinaryQF& q1, const BinaryQF& q2);

// x q1 + y q2.
BinaryQF pencil(const BinaryQF& q1, const BinaryQF& q2, Int x, Int y);

struct FormPair {
    BinaryQF q1;
    BinaryQF q2;
    Int t = 0;  // codiscriminant(q1, q2)

    friend auto operator<=>(const FormPair&, const FormPair&) = default;
};

struct OrbitClassPair {
    FormPair representative;
    Rational stabilizer_weight{1};
};

// Every q2 with disc(q2) = d2 and codisc(q1, q2) = t. The Gram matrices
// M_i = (2a_i b_i; b_i 2c_i) satisfy |entries of M2| <= ||M1|| * rho(M1^-1 M2),
// and rho(M1^-1 M2) <= (|t| + sqrt(t^2 - d1 d2)) / |d1|.
std::vector<BinaryQF> enumerate_partner_forms(const BinaryQF& q1, Int d2, Int t);

// One representative per SL2(Z)-orbit of definite pairs with discriminants
// (d1, d2) and codiscriminant t. q1 runs over class_representatives(d1) and q2
// is the lexicographically least Aut(q1)-translate. A nonzero seed replaces each
// q1 by a pseudo-random SL2(Z)-translate first; orbit counts do not depend on it.
std::vector<OrbitClassPair> pair_class_reps(Int d1, Int d2, Int t, std::uint64_t seed = 0);

Int h_plain(Int d1, Int d2, Int t);
Int h_weighted(Int D1, Int D2, Int d1, Int d2, Int t, std::uint64_t seed = 0);

// Orbits of pairs with Q1 = lambda Q2, lambda rational; weight 1/M_{Q1}.
std::vector<OrbitClassPair> proportional_pair_reps(Int delta1, Int delta2);
Rational E_term(Int delta1, Int delta2, Int D1, Int D2);

// Independent orbit count by union-find. The region holds every pair whose
// size a + c of the positive definite sum |q1| + |q2| is at most `box`; edges
// join a pair to its images under words of length <= word_len in S, T, T^-1
// that stay in the region. Gauss reduction of |q1| + |q2| never increases the
// size, so each orbit meeting the region is one component once word_len >= 3.
Int brute_force_orbit_count(Int d1, Int d2, Int t, Int box, int word_len);

struct ClassTableRow {
    Int d1, d2, t, D1, D2, h_plain, h_weighted;
};
std::vector<ClassTableRow> class_table(const std::vector<Int>& d1s, const std::vector<Int>& d2s,
                                       const std::vector<Int>& ts, Int D1, Int D2);
void write_class_table_csv(std::ostream& os, const std::vector<ClassTableRow>& rows);

}  // namespace qfkit
