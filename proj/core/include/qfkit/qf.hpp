#pragma once

#include <complex>
#include <vector>

#include "qfkit/checked.hpp"

namespace qfkit {

// a X^2 + b XY + c Y^2
struct BinaryQF {
    Int a = 0;
    Int b = 0;
    Int c = 0;

    Int discriminant() const;
    bool is_definite() const { return discriminant() < 0; }
    bool is_positive_definite() const { return is_definite() && a > 0; }
    BinaryQF operator-() const { return {checked::neg(a), checked::neg(b), checked::neg(c)}; }
    // Value at (x, y), exact.
    Int operator()(Int x, Int y) const;

    friend auto operator<=>(const BinaryQF&, const BinaryQF&) = default;
};

// (p q; r s) with ps - qr = 1, checked on construction.
class UnimodularMatrix {
public:
    UnimodularMatrix() = default;
    UnimodularMatrix(Int p, Int q, Int r, Int s);

    static UnimodularMatrix identity() { return {}; }
    static UnimodularMatrix S() { return {0, -1, 1, 0}; }
    static UnimodularMatrix T() { return {1, 1, 0, 1}; }
    static UnimodularMatrix T_inv() { return {1, -1, 0, 1}; }
    static UnimodularMatrix T_pow(Int k) { return {1, k, 0, 1}; }

    Int p() const { return p_; }
    Int q() const { return q_; }
    Int r() const { return r_; }
    Int s() const { return s_; }

    UnimodularMatrix operator*(const UnimodularMatrix& o) const;
    UnimodularMatrix inverse() const { return {s_, checked::neg(q_), checked::neg(r_), p_}; }
    UnimodularMatrix operator-() const { return {checked::neg(p_), checked::neg(q_), checked::neg(r_), checked::neg(s_)}; }
    // Representative of the PSL2 class: first nonzero entry positive.
    UnimodularMatrix projective_normal() const;

    friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

private:
    Int p_ = 1, q_ = 0, r_ = 0, s_ = 1;
};

struct IntegerMatrix {
    Int a = 1;
    Int b = 0;
    Int c = 0;
    Int d = 1;

    Int det() const { return checked::sub(checked::mul(a, d), checked::mul(b, c)); }
    Int trace() const { return checked::add(a, d); }
    bool in_gamma(Int n, Int t) const { return det() == n && trace() == t; }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
};

IntegerMatrix to_integer_matrix(const UnimodularMatrix& m);
IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y);

class UpperHalfPoint {
public:
    UpperHalfPoint(double x, double y);
    explicit UpperHalfPoint(std::complex<double> z) : UpperHalfPoint(z.real(), z.imag()) {}

    double x() const { return x_; }
    double y() const { return y_; }
    std::complex<double> z() const { return {x_, y_}; }

private:
    double x_;
    double y_;
};

Int discriminant(const BinaryQF& q);

// Q^tau(X, Y) = Q(pX + qY, rX + sY); a right action: act(act(Q, s), t) = act(Q, s*t).
BinaryQF act(const BinaryQF& q, const UnimodularMatrix& tau);

struct Reduction {
    BinaryQF form;
    UnimodularMatrix tau;  // act(input, tau) == form
};

// Gauss reduction of a definite form: |b| <= a <= c with b >= 0 when |b| = a
// or a = c (for a negative definite input the conditions hold for -form).
Reduction reduce_definite(const BinaryQF& q);
bool is_reduced(const BinaryQF& q);

// Reduced positive definite forms of discriminant delta followed by their negatives.
std::vector<BinaryQF> class_representatives(Int delta);

UpperHalfPoint root_point(const BinaryQF& q);

// Order of the stabilizer of root_point(q) in PSL2(Z).
int stabilizer_order(const BinaryQF& q);
// One SL2(Z) matrix per element of the stabilizer of q in PSL2(Z).
std::vector<UnimodularMatrix> automorphs(const BinaryQF& q);

// gamma = (a b; c d) -> c X^2 + (d - a) XY - b Y^2.
BinaryQF gamma_to_form(const IntegerMatrix& g);
IntegerMatrix form_to_gamma(const BinaryQF& q, Int n, Int t);

// u(z, w) = |z - w|^2 / (4 Im z Im w).
double point_pair_u(const UpperHalfPoint& z, const UpperHalfPoint& w);

// Moebius action of a real 2x2 matrix with positive determinant.
std::complex<double> mobius(double a, double b, double c, double d, std::complex<double> z);
UpperHalfPoint mobius(const IntegerMatrix& g, const UpperHalfPoint& z);
UpperHalfPoint mobius(const UnimodularMatrix& g, const UpperHalfPoint& z);

struct OrbitPoint {
    BinaryQF form;  // Q_gamma
    double u;       // u(gamma z, z)
};

// All gamma in Gamma_{n,t} with u(gamma z, z) <= X, reported through their forms.
// Uses 4 n y^2 u(gamma z, z) = |Q_gamma(z, 1)|^2.
std::vector<OrbitPoint> orbit_points(Int n, Int t, const UpperHalfPoint& z, double X);
Int count_orbit_points(Int n, Int t, const UpperHalfPoint& z, double X);

}  // namespace qfkit
