#include "qfkit/lfun.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "qfkit/errors.hpp"
#include "qfkit/genus.hpp"

namespace qfkit {

DiscriminantSplit split_discriminant(Int delta) {
    if (delta == 0) throw std::invalid_argument("split_discriminant: delta must be nonzero");
    const Int r = mod_pos(delta, 4);
    if (r != 0 && r != 1) throw std::invalid_argument("split_discriminant: delta must be 0,1 mod 4");
    const Int m = delta < 0 ? -delta : delta;
    for (Int l = static_cast<Int>(std::sqrt(static_cast<double>(m))) + 1; l >= 1; --l) {
        const Int l2 = l * l;
        if (l2 > m || delta % l2 != 0) continue;
        if (is_fundamental(delta / l2)) return {delta / l2, l};
    }
    throw std::logic_error("split_discriminant: no fundamental part found");
}

namespace {

// B_2, B_4, ..., B_30
constexpr std::array<double, 15> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,        1.0 / 42.0,           -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,    7.0 / 6.0,            -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,  854513.0 / 138.0,     -236364091.0 / 2730.0,
    8553103.0 / 6.0,    -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};

// x^{-s} for x > 0.
Complex real_pow(double x, Complex s) {
    const double L = std::log(x);
    return std::exp(-s * L);
}

// (x^{1-s} - 1)/(s - 1), continuous through s = 1.
Complex pole_difference(double x, Complex s) {
    const double L = std::log(x);
    const Complex w = (1.0 - s) * L;
    Complex ratio;  // expm1(w)/w
    if (std::abs(w) < 1e-3) {
        ratio = 1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0 + w * w * w * w / 120.0;
    } else {
        ratio = (std::exp(w) - 1.0) / w;
    }
    return -L * ratio;
}

}  // namespace

Complex hurwitz_zeta_regular(Complex s, double a, EulerMaclaurin em) {
    if (!(a > 0.0)) throw std::invalid_argument("hurwitz_zeta: a must be positive");
    if (em.M < 1 || em.M > static_cast<int>(kBernoulli.size()))
        throw std::invalid_argument("hurwitz_zeta: Euler-Maclaurin order out of range");
    const int N = em.N > 0 ? em.N : 30 + static_cast<int>(std::ceil(std::abs(s)));
    Complex sum = 0.0;
    for (int k = N - 1; k >= 0; --k) sum += real_pow(k + a, s);
    const double x = N + a;
    sum += pole_difference(x, s);
    const Complex xs = real_pow(x, s);
    sum += 0.5 * xs;
    // B_{2j}/(2j)! s(s+1)...(s+2j-2) x^{-s-2j+1}
    Complex rising = s;  // s(s+1)...(s+2j-2)
    Complex xp = xs / x;  // x^{-s-1}
    double fact = 2.0;    // (2j)!
    for (int j = 1; j <= em.M; ++j) {
        sum += kBernoulli[j - 1] / fact * rising * xp;
        rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
        xp /= x * x;
        fact *= double(2 * j + 1) * double(2 * j + 2);
    }
    return sum;
}

Complex hurwitz_zeta(Complex s, double a, EulerMaclaurin em) {
    if (std::abs(s - 1.0) <= 1e-14) throw pole_error("hurwitz_zeta: pole at s = 1");
    return hurwitz_zeta_regular(s, a, em) + 1.0 / (s - 1.0);
}

Complex riemann_zeta(Complex s, EulerMaclaurin em) { return hurwitz_zeta(s, 1.0, em); }

Complex dirichlet_L(Complex s, Int D) {
    if (!is_fundamental(D)) throw std::invalid_argument("dirichlet_L: D must be fundamental");
    if (D == 1) return riemann_zeta(s);
    const Int m = D < 0 ? -D : D;
    Complex sum = 0.0;
    for (Int a = 1; a <= m; ++a) {
        const int chi = kronecker(D, a);
        if (chi == 0) continue;
        sum += double(chi) * hurwitz_zeta_regular(s, double(a) / double(m));
    }
    return sum * real_pow(double(m), s);
}

Complex zagier_L(Complex s, Int delta) {
    const auto [D, l] = split_discriminant(delta);
    const Complex L = dirichlet_L(s, D);
    Complex sum = 0.0;
    for (Int l1 : divisors(l)) {
        const int mu = mobius_mu(l1);
        const int chi = kronecker(D, l1);
        if (mu == 0 || chi == 0) continue;
        const Int l2 = l / l1;
        Complex tau = 0.0;
        for (Int a : divisors(l2)) tau += real_pow(double(a), 2.0 * s - 1.0);
        tau *= real_pow(double(l2), 0.5 - s);
        sum += double(chi * mu) / std::sqrt(double(l1)) * tau;
    }
    return L * real_pow(double(l), s - 0.5) * sum;
}

Complex zagier_L_star(Complex s, Int delta) {
    return zagier_L(s, delta) * real_pow(double(delta < 0 ? -delta : delta), -s / 2.0);
}

Int sqrt_count_mod4q(Int delta, Int q) {
    if (q <= 0) throw std::invalid_argument("sqrt_count_mod4q: q must be positive");
    const Int m = 4 * q;
    const Int target = mod_pos(delta, m);
    Int count = 0;
    for (Int r = 0; r < 2 * q; ++r)
        if (static_cast<Int>((static_cast<__int128>(r) * r) % m) == target) ++count;
    return count;
}

namespace {

// #{x mod p^k : x^2 = delta (mod p^k)} for odd p, and for p = 2 the count
// #{r mod 2^{k+1} : r^2 = delta (mod 2^{k+2})}.
Int local_count(Int delta, Int p, int k) {
    if (p != 2 && delta % p != 0) return 1 + kronecker(delta, p);
    Int modulus = 1;
    for (int i = 0; i < k; ++i) modulus *= p;
    Int range = modulus;
    if (p == 2) {
        range = 2 * modulus;
        modulus = 4 * modulus;
    }
    const Int target = mod_pos(delta, modulus);
    Int count = 0;
    for (Int x = 0; x < range; ++x)
        if (static_cast<Int>((static_cast<__int128>(x) * x) % modulus) == target) ++count;
    return count;
}

}  // namespace

std::vector<Int> sqrt_counts_up_to(Int delta, Int q_max) {
    if (q_max < 1) throw std::invalid_argument("sqrt_counts_up_to: q_max must be positive");
    std::vector<Int> spf(q_max + 1, 0);
    for (Int i = 2; i <= q_max; ++i) {
        if (spf[i] != 0) continue;
        for (Int j = i; j <= q_max; j += i)
            if (spf[j] == 0) spf[j] = i;
    }
    std::map<std::pair<Int, int>, Int> cache;
    auto local = [&](Int p, int k) {
        const auto key = std::make_pair(p, k);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const Int v = local_count(delta, p, k);
        cache.emplace(key, v);
        return v;
    };
    std::vector<Int> out(q_max + 1, 0);
    out[1] = local(2, 0);  // r mod 2 with r^2 = delta mod 4
    for (Int q = 2; q <= q_max; ++q) {
        Int rest = q;
        Int value = 1;
        int e2 = 0;
        while (rest % 2 == 0) {
            rest /= 2;
            ++e2;
        }
        value *= local(2, e2);
        while (rest > 1 && value != 0) {
            const Int p = spf[rest];
            int k = 0;
            while (rest % p == 0) {
                rest /= p;
                ++k;
            }
            value *= local(p, k);
        }
        out[q] = value;
    }
    return out;
}

ZagierSeries zagier_L_series(Complex s, Int delta, Int q_max) {
    if (!(s.real() > 1.0)) throw std::invalid_argument("zagier_L_series: requires Re s > 1");
    const Int r = mod_pos(delta, 4);
    if (delta == 0 || (r != 0 && r != 1)) throw std::invalid_argument("zagier_L_series: delta must be nonzero, 0,1 mod 4");
    if (q_max < 16) throw std::invalid_argument("zagier_L_series: q_max too small");

    const std::vector<Int> N = sqrt_counts_up_to(delta, q_max);
    Complex partial = 0.0;
    for (Int q = q_max; q >= 1; --q)
        if (N[q] != 0) partial += double(N[q]) * real_pow(double(q), s);

    // least-squares fit of A(x) = sum_{q <= x} N(q) on x in [Q/4, Q]
    const bool square_delta = split_discriminant(delta).D == 1;
    double A = 0.0;
    for (Int q = 1; q < q_max / 4; ++q) A += double(N[q]);
    double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
    for (Int x = q_max / 4; x <= q_max; ++x) {
        A += double(N[x]);
        const double xd = double(x), lx = std::log(xd);
        const double f1 = xd * lx, f2 = xd;
        s11 += f1 * f1;
        s12 += f1 * f2;
        s22 += f2 * f2;
        r1 += f1 * A;
        r2 += f2 * A;
    }
    double c1 = 0.0, c2 = 0.0;
    if (square_delta) {
        const double det = s11 * s22 - s12 * s12;
        c1 = (r1 * s22 - r2 * s12) / det;
        c2 = (s11 * r2 - s12 * r1) / det;
    } else {
        c2 = r2 / s22;
    }
    const double Q = double(q_max), LQ = std::log(Q);
    const Complex Qs = real_pow(Q, s);  // Q^{-s}
    const Complex sm1 = s - 1.0;
    // sum_{q > Q} N(q) q^-s = -A(Q) Q^-s + s int_Q^inf A(x) x^{-s-1} dx
    const Complex integral = Q * Qs * (c2 / sm1 + c1 * (LQ / sm1 + 1.0 / (sm1 * sm1)));
    const Complex tail = -A * Qs + s * integral;

    const Complex factor = riemann_zeta(2.0 * s) / riemann_zeta(s);
    ZagierSeries out;
    out.partial = factor * partial;
    out.value = factor * (partial + tail);
    out.tail_estimate = std::abs(out.value - out.partial);
    return out;
}

}  // namespace qfkit
