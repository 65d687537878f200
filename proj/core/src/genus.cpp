#include "qfkit/genus.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qfkit {

int kronecker(Int D, Int n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (D < 0) result = -result;
    }
    // factor 2 from n
    int v = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((D & 1) == 0) return 0;
        const Int r8 = mod_pos(D, 8);
        if ((v & 1) && (r8 == 3 || r8 == 5)) result = -result;
    }
    // Jacobi symbol (D/n), n odd positive
    Int a = mod_pos(D, n);
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const Int r8 = n % 8;
            if (r8 == 3 || r8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

namespace {

bool squarefree(Int m) {
    m = std::llabs(m);
    for (Int p = 2; p * p <= m; ++p) {
        if (m % (p * p) == 0) return false;
        if (m % p == 0) m /= p;
    }
    return true;
}

}  // namespace

bool is_fundamental(Int D) {
    if (D == 1) return true;
    if (D == 0) return false;
    const Int r = mod_pos(D, 4);
    if (r == 1) return squarefree(D);
    if (r == 0) {
        const Int m = D / 4;
        const Int rm = mod_pos(m, 4);
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

bool is_valid_character_pair(Int D, Int delta) {
    if (!is_fundamental(D) || delta == 0 || delta % D != 0) return false;
    const Int r = mod_pos(delta / D, 4);
    return r == 0 || r == 1;
}

namespace {

void require_valid(Int D, Int delta, const char* who) {
    if (!is_valid_character_pair(D, delta))
        throw std::invalid_argument(std::string(who) + ": need D fundamental, D | disc, disc/D = 0,1 mod 4");
}

// Visits q(x, y) in shell order until the visitor returns true.
template <class Visit>
void scan_values(Int D, const BinaryQF& q, Visit&& visit) {
    const Int cap = checked::mul(4, D, D);
    for (Int k = 1; k <= cap; ++k) {
        for (Int x = -k; x <= k; ++x) {
            const bool edge = (x == -k || x == k);
            for (Int y = -k; y <= k; ++y) {
                if (!edge && y != -k && y != k) continue;
                if (visit(q(x, y))) return;
            }
        }
    }
    throw std::runtime_error("omega: represented-value search exceeded the shell cap 4 D^2");
}

}  // namespace

int omega(Int D, const BinaryQF& q) {
    require_valid(D, q.discriminant(), "omega");
    if (gcd(gcd(gcd(q.a, q.b), q.c), D) > 1) return 0;
    if (D == 1) return 1;
    int out = 0;
    scan_values(D, q, [&](Int r) {
        if (r == 0 || gcd(r, D) != 1) return false;
        out = kronecker(D, r);
        return true;
    });
    return out;
}

int omega_matrix(Int D, const IntegerMatrix& g) { return omega(D, gamma_to_form(g)); }

std::vector<Int> represented_coprime_values(Int D, const BinaryQF& q, int count) {
    require_valid(D, q.discriminant(), "represented_coprime_values");
    if (gcd(gcd(gcd(q.a, q.b), q.c), D) > 1) throw std::invalid_argument("represented_coprime_values: gcd(a,b,c,D) > 1");
    std::vector<Int> out;
    if (count <= 0) return out;
    scan_values(D, q, [&](Int r) {
        if (r == 0 || gcd(r, D) != 1) return false;
        if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
        return static_cast<int>(out.size()) >= count;
    });
    return out;
}

Int rho_q(Int D, Int delta, Int q) {
    require_valid(D, delta, "rho_q");
    if (q <= 0) throw std::invalid_argument("rho_q: q must be positive");
    const Int m = checked::mul(4, q);
    Int sum = 0;
    for (Int r = 0; r < 2 * q; ++r) {
        const Int num = checked::sub(checked::mul(r, r), delta);
        if (mod_pos(num, m) != 0) continue;
        sum += omega(D, {q, r, num / m});
    }
    return sum;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<Int, int>> out;
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

int mobius_mu(Int n) {
    int mu = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::vector<Int> divisors(Int n) {
    if (n <= 0) throw std::invalid_argument("divisors: n must be positive");
    std::vector<Int> lo, hi;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

ConvolutionSides check_convolution_identity(Int D, Int delta, Int q) {
    require_valid(D, delta, "check_convolution_identity");
    if (q <= 0) throw std::invalid_argument("check_convolution_identity: q must be positive");
    ConvolutionSides out{0, 0};
    for (Int q2 : divisors(q)) {
        const int mu = mobius_mu(q2);
        if (mu == 0) continue;
        const Int q1 = q / q2;
        out.lhs += mu * kronecker(D, q2) * rho_q(D, delta, q1);
        out.rhs += mu * rho_q(1, delta / D, q1);
    }
    return out;
}

}  // namespace qfkit
