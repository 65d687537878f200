#include "qfkit/qf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfkit {

using namespace checked;

Int BinaryQF::discriminant() const { return sub(mul(b, b), mul(4, a, c)); }

Int BinaryQF::operator()(Int x, Int y) const {
    return add(add(mul(a, x, x), mul(b, x, y)), mul(c, y, y));
}

UnimodularMatrix::UnimodularMatrix(Int p, Int q, Int r, Int s) : p_(p), q_(q), r_(r), s_(s) {
    if (sub(mul(p, s), mul(q, r)) != 1) throw std::invalid_argument("UnimodularMatrix: determinant must be 1");
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
    return {add(mul(p_, o.p_), mul(q_, o.r_)), add(mul(p_, o.q_), mul(q_, o.s_)),
            add(mul(r_, o.p_), mul(s_, o.r_)), add(mul(r_, o.q_), mul(s_, o.s_))};
}

UnimodularMatrix UnimodularMatrix::projective_normal() const {
    for (Int e : {p_, q_, r_, s_}) {
        if (e != 0) return e > 0 ? *this : -*this;
    }
    return *this;
}

IntegerMatrix to_integer_matrix(const UnimodularMatrix& m) { return {m.p(), m.q(), m.r(), m.s()}; }

IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
    return {add(mul(x.a, y.a), mul(x.b, y.c)), add(mul(x.a, y.b), mul(x.b, y.d)),
            add(mul(x.c, y.a), mul(x.d, y.c)), add(mul(x.c, y.b), mul(x.d, y.d))};
}

UpperHalfPoint::UpperHalfPoint(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0.0))
        throw std::invalid_argument("UpperHalfPoint: requires finite x and y > 0");
}

Int discriminant(const BinaryQF& q) { return q.discriminant(); }

BinaryQF act(const BinaryQF& f, const UnimodularMatrix& tau) {
    const Int p = tau.p(), q = tau.q(), r = tau.r(), s = tau.s();
    const Int a = add(add(mul(f.a, p, p), mul(f.b, p, r)), mul(f.c, r, r));
    const Int b = add(add(mul(2, f.a, mul(p, q)), mul(f.b, add(mul(p, s), mul(q, r)))), mul(2, f.c, mul(r, s)));
    const Int c = add(add(mul(f.a, q, q), mul(f.b, q, s)), mul(f.c, s, s));
    return {a, b, c};
}

namespace {

void require_definite(const BinaryQF& q, const char* who) {
    if (q.discriminant() >= 0) throw std::invalid_argument(std::string(who) + ": discriminant must be negative");
}

Reduction reduce_positive(BinaryQF f) {
    UnimodularMatrix tau;
    for (;;) {
        // b into (-a, a]
        const Int k = floor_div(sub(f.a, f.b), mul(2, f.a));
        if (k != 0) {
            const UnimodularMatrix step = UnimodularMatrix::T_pow(k);
            f = act(f, step);
            tau = tau * step;
        }
        if (f.a > f.c) {
            f = act(f, UnimodularMatrix::S());
            tau = tau * UnimodularMatrix::S();
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) {
        f = act(f, UnimodularMatrix::S());
        tau = tau * UnimodularMatrix::S();
    }
    return {f, tau};
}

}  // namespace

Reduction reduce_definite(const BinaryQF& q) {
    require_definite(q, "reduce_definite");
    if (q.a > 0) return reduce_positive(q);
    Reduction r = reduce_positive(-q);
    return {-r.form, r.tau};
}

bool is_reduced(const BinaryQF& q) {
    if (q.discriminant() >= 0) return false;
    const BinaryQF f = q.a > 0 ? q : -q;
    if (!(std::abs(f.b) <= f.a && f.a <= f.c)) return false;
    if ((std::abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

std::vector<BinaryQF> class_representatives(Int delta) {
    if (delta >= 0) throw std::invalid_argument("class_representatives: discriminant must be negative");
    const Int r4 = mod_pos(delta, 4);
    if (r4 == 2 || r4 == 3) throw std::invalid_argument("class_representatives: discriminant must be 0 or 1 mod 4");
    std::vector<BinaryQF> pos;
    // a <= c and |b| <= a give 3a^2 <= |delta|
    for (Int a = 1; mul(3, a, a) <= -delta; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            const Int num = sub(mul(b, b), delta);
            if (num % mul(4, a) != 0) continue;
            const Int c = num / mul(4, a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            pos.push_back({a, b, c});
        }
    }
    std::vector<BinaryQF> out = pos;
    for (const auto& f : pos) out.push_back(-f);
    return out;
}

UpperHalfPoint root_point(const BinaryQF& q) {
    require_definite(q, "root_point");
    const double sd = std::sqrt(static_cast<double>(-q.discriminant()));
    const double a2 = 2.0 * static_cast<double>(q.a);
    const double im = q.a > 0 ? sd / a2 : -sd / a2;
    return {-static_cast<double>(q.b) / a2, im};
}

namespace {

// Automorphs of a reduced form: entries of elliptic stabilizers of reduced
// roots are bounded by 2; the shell |entry| = 3 must be empty.
std::vector<UnimodularMatrix> reduced_automorphs(const BinaryQF& f) {
    constexpr Int core = 2;
    constexpr Int shell = core + 1;
    std::vector<UnimodularMatrix> out;
    for (Int p = -shell; p <= shell; ++p)
        for (Int q = -shell; q <= shell; ++q)
            for (Int r = -shell; r <= shell; ++r)
                for (Int s = -shell; s <= shell; ++s) {
                    if (p * s - q * r != 1) continue;
                    const UnimodularMatrix m(p, q, r, s);
                    if (act(f, m) != f) continue;
                    const Int big = std::max({std::abs(p), std::abs(q), std::abs(r), std::abs(s)});
                    if (big > core) throw std::logic_error("stabilizer enumeration: nonempty safety shell");
                    const UnimodularMatrix n = m.projective_normal();
                    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
                }
    return out;
}

}  // namespace

std::vector<UnimodularMatrix> automorphs(const BinaryQF& q) {
    const Reduction red = reduce_definite(q);
    std::vector<UnimodularMatrix> out;
    const UnimodularMatrix inv = red.tau.inverse();
    for (const auto& g : reduced_automorphs(red.form)) out.push_back((red.tau * g * inv).projective_normal());
    return out;
}

int stabilizer_order(const BinaryQF& q) {
    return static_cast<int>(reduced_automorphs(reduce_definite(q).form).size());
}

BinaryQF gamma_to_form(const IntegerMatrix& g) { return {g.c, sub(g.d, g.a), neg(g.b)}; }

IntegerMatrix form_to_gamma(const BinaryQF& q, Int n, Int t) {
    if (q.discriminant() != sub(mul(t, t), mul(4, n)))
        throw std::invalid_argument("form_to_gamma: discriminant does not equal t^2 - 4n");
    // disc = t^2 - 4n forces b = t (mod 2)
    const Int a = sub(t, q.b) / 2;
    const Int d = add(t, q.b) / 2;
    return {a, neg(q.c), q.a, d};
}

double point_pair_u(const UpperHalfPoint& z, const UpperHalfPoint& w) {
    return std::norm(z.z() - w.z()) / (4.0 * z.y() * w.y());
}

std::complex<double> mobius(double a, double b, double c, double d, std::complex<double> z) {
    return (a * z + b) / (c * z + d);
}

UpperHalfPoint mobius(const IntegerMatrix& g, const UpperHalfPoint& z) {
    if (g.det() <= 0) throw std::invalid_argument("mobius: determinant must be positive");
    return UpperHalfPoint(mobius(double(g.a), double(g.b), double(g.c), double(g.d), z.z()));
}

UpperHalfPoint mobius(const UnimodularMatrix& g, const UpperHalfPoint& z) {
    return mobius(to_integer_matrix(g), z);
}

std::vector<OrbitPoint> orbit_points(Int n, Int t, const UpperHalfPoint& z, double X) {
    if (n <= 0) throw std::invalid_argument("orbit_points: n must be positive");
    const Int delta = sub(mul(t, t), mul(4, n));
    if (delta >= 0) throw std::invalid_argument("orbit_points: t^2 - 4n must be negative");
    if (!(X >= 0.0)) throw std::invalid_argument("orbit_points: X must be nonnegative");

    const double x = z.x(), y = z.y();
    const double nd = static_cast<double>(n);
    const double R = std::sqrt(nd * X);
    const double slack = 1.0 + 1e-9;
    // |Im Q(z)| = y|2Ax + B| <= 2y R and 4A^2y^2 = (2Ax+B)^2 - delta - 4A Re Q(z)
    const double a_max = slack * (2.0 * R + std::sqrt(8.0 * nd * X - static_cast<double>(delta))) / (2.0 * y) + 1e-9;
    const Int a_lim = static_cast<Int>(std::floor(a_max)) + 1;
    const double bound = 4.0 * nd * y * y * X;

    std::vector<OrbitPoint> out;
    for (Int A = -a_lim; A <= a_lim; ++A) {
        if (A == 0) continue;
        const bool a_core = std::abs(static_cast<double>(A)) <= a_max;
        const double centre = -2.0 * static_cast<double>(A) * x;
        const double half = slack * 2.0 * R + 1e-9;
        const Int b_lo = static_cast<Int>(std::floor(centre - half)) - 1;
        const Int b_hi = static_cast<Int>(std::ceil(centre + half)) + 1;
        for (Int B = b_lo; B <= b_hi; ++B) {
            const Int num = sub(mul(B, B), delta);
            if (num % mul(4, A) != 0) continue;
            const Int C = num / mul(4, A);
            const double Ad = double(A), Bd = double(B), Cd = double(C);
            const double re = Ad * (x * x - y * y) + Bd * x + Cd;
            const double im = y * (2.0 * Ad * x + Bd);
            const double val = re * re + im * im;
            if (val > bound) continue;
            const bool b_core = std::abs(Bd - centre) <= half;
            if (!(a_core && b_core)) throw std::logic_error("orbit_points: solution found in safety shell");
            out.push_back({{A, B, C}, val / (4.0 * nd * y * y)});
        }
    }
    return out;
}

Int count_orbit_points(Int n, Int t, const UpperHalfPoint& z, double X) {
    return static_cast<Int>(orbit_points(n, t, z, X).size());
}

}  // namespace qfkit
