#include "qfkit/pairs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "qfkit/genus.hpp"

namespace qfkit {

using namespace checked;

Int codiscriminant(const BinaryQF& q1, const BinaryQF& q2) {
    return sub(sub(mul(q1.b, q2.b), mul(2, q1.a, q2.c)), mul(2, q2.a, q1.c));
}

BinaryQF pencil(const BinaryQF& q1, const BinaryQF& q2, Int x, Int y) {
    return {add(mul(x, q1.a), mul(y, q2.a)), add(mul(x, q1.b), mul(y, q2.b)), add(mul(x, q1.c), mul(y, q2.c))};
}

namespace {

void require_definite_disc(Int d, const char* who) {
    const Int r = mod_pos(d, 4);
    if (d >= 0 || (r != 0 && r != 1))
        throw std::invalid_argument(std::string(who) + ": discriminants must be negative and 0,1 mod 4");
}

void require_nondegenerate(Int d1, Int d2, Int t, const char* who) {
    if (mul(t, t) == mul(d1, d2))
        throw std::invalid_argument(std::string(who) + ": t^2 = d1 d2 is the proportional case");
}

}  // namespace

std::vector<BinaryQF> enumerate_partner_forms(const BinaryQF& q1, Int d2, Int t) {
    const Int d1 = q1.discriminant();
    require_definite_disc(d1, "enumerate_partner_forms");
    require_definite_disc(d2, "enumerate_partner_forms");
    require_nondegenerate(d1, d2, t, "enumerate_partner_forms");

    const double td = static_cast<double>(t);
    const double gap = std::max(0.0, td * td - static_cast<double>(d1) * static_cast<double>(d2));
    const double rho = (std::abs(td) + std::sqrt(gap)) / static_cast<double>(-d1);
    const double E = (2.0 * static_cast<double>(std::abs(q1.a) + std::abs(q1.c)) * rho) * (1.0 + 1e-12) + 1e-9;
    const Int a_lim = static_cast<Int>(std::floor(E / 2.0)) + 1;
    const Int b_lim = static_cast<Int>(std::floor(E)) + 1;

    std::vector<BinaryQF> out;
    const Int den = mul(2, q1.a);
    for (Int a2 = -a_lim; a2 <= a_lim; ++a2) {
        for (Int b2 = -b_lim; b2 <= b_lim; ++b2) {
            // codisc = t fixes c2
            const Int num = sub(sub(mul(q1.b, b2), mul(2, a2, q1.c)), t);
            if (num % den != 0) continue;
            const Int c2 = num / den;
            const BinaryQF q2{a2, b2, c2};
            if (q2.discriminant() != d2) continue;
            const bool inside = 2.0 * std::abs(double(a2)) <= E && std::abs(double(b2)) <= E && 2.0 * std::abs(double(c2)) <= E;
            if (!inside) throw std::logic_error("enumerate_partner_forms: solution outside the proven box");
            out.push_back(q2);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

UnimodularMatrix random_unimodular(std::mt19937_64& rng) {
    UnimodularMatrix m;
    std::uniform_int_distribution<int> pick(0, 2);
    for (int i = 0; i < 6; ++i) {
        switch (pick(rng)) {
            case 0: m = m * UnimodularMatrix::S(); break;
            case 1: m = m * UnimodularMatrix::T(); break;
            default: m = m * UnimodularMatrix::T_inv(); break;
        }
    }
    return m;
}

}  // namespace

std::vector<OrbitClassPair> pair_class_reps(Int d1, Int d2, Int t, std::uint64_t seed) {
    require_definite_disc(d1, "pair_class_reps");
    require_definite_disc(d2, "pair_class_reps");
    require_nondegenerate(d1, d2, t, "pair_class_reps");
    std::mt19937_64 rng(seed);
    std::vector<OrbitClassPair> out;
    for (BinaryQF q1 : class_representatives(d1)) {
        if (seed != 0) q1 = act(q1, random_unimodular(rng));
        const auto aut = automorphs(q1);
        std::set<BinaryQF> canon;
        for (const auto& q2 : enumerate_partner_forms(q1, d2, t)) {
            BinaryQF best = q2;
            for (const auto& g : aut) best = std::min(best, act(q2, g));
            canon.insert(best);
        }
        for (const auto& q2 : canon) out.push_back({{q1, q2, t}, Rational(1)});
    }
    return out;
}

Int h_plain(Int d1, Int d2, Int t) { return static_cast<Int>(pair_class_reps(d1, d2, t).size()); }

Int h_weighted(Int D1, Int D2, Int d1, Int d2, Int t, std::uint64_t seed) {
    if (!is_valid_character_pair(D1, d1) || !is_valid_character_pair(D2, d2))
        throw std::invalid_argument("h_weighted: invalid (D, d) combination");
    Int sum = 0;
    for (const auto& c : pair_class_reps(d1, d2, t, seed))
        sum += omega(D1, c.representative.q1) * omega(D2, c.representative.q2);
    return sum;
}

namespace {

// Exact square root of a nonnegative integer, or -1.
Int exact_sqrt(Int n) {
    if (n < 0) return -1;
    Int r = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n ? r : -1;
}

}  // namespace

std::vector<OrbitClassPair> proportional_pair_reps(Int delta1, Int delta2) {
    if (delta1 >= 0 || delta2 >= 0) throw std::invalid_argument("proportional_pair_reps: discriminants must be negative");
    const Int g = gcd(delta1, delta2);
    const Int P = exact_sqrt(-delta1 / g);
    const Int Q = exact_sqrt(-delta2 / g);
    std::vector<OrbitClassPair> out;
    if (P < 0 || Q < 0) return out;
    // lambda = P / Q, q2 = q1 Q / P
    for (const auto& q1 : class_representatives(delta1)) {
        if (q1.a % P != 0 || q1.b % P != 0 || q1.c % P != 0) continue;
        const BinaryQF q2{q1.a / P * Q, q1.b / P * Q, q1.c / P * Q};
        const Rational w(1, stabilizer_order(q1));
        out.push_back({{q1, q2, codiscriminant(q1, q2)}, w});
        out.push_back({{q1, -q2, codiscriminant(q1, -q2)}, w});
    }
    return out;
}

Rational E_term(Int delta1, Int delta2, Int D1, Int D2) {
    if (!is_valid_character_pair(D1, delta1) || !is_valid_character_pair(D2, delta2))
        throw std::invalid_argument("E_term: invalid (D, delta) combination");
    Rational sum(0);
    for (const auto& c : proportional_pair_reps(delta1, delta2)) {
        const int w = omega(D1, c.representative.q1) * omega(D2, c.representative.q2);
        sum += c.stabilizer_weight * Rational(w);
    }
    return sum;
}

namespace {

using PairKey = std::array<Int, 6>;

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Int v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
        return h;
    }
};

BinaryQF positive_part(const BinaryQF& q) { return q.a > 0 ? q : -q; }

Int pair_size(const BinaryQF& q1, const BinaryQF& q2) {
    const BinaryQF s1 = positive_part(q1), s2 = positive_part(q2);
    return s1.a + s1.c + s2.a + s2.c;
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
};

}  // namespace

Int brute_force_orbit_count(Int d1, Int d2, Int t, Int box, int word_len) {
    require_definite_disc(d1, "brute_force_orbit_count");
    require_definite_disc(d2, "brute_force_orbit_count");
    require_nondegenerate(d1, d2, t, "brute_force_orbit_count");
    if (box < 1 || word_len < 1) throw std::invalid_argument("brute_force_orbit_count: box and word_len must be positive");

    // positive definite summands force |a_i|, |b_i|, |c_i| <= box
    std::vector<FormPair> pairs;
    for (Int a1 = -box; a1 <= box; ++a1) {
        if (a1 == 0) continue;
        for (Int b1 = -box; b1 <= box; ++b1) {
            const Int n1 = sub(mul(b1, b1), d1);
            if (n1 % (4 * a1) != 0) continue;
            const BinaryQF q1{a1, b1, n1 / (4 * a1)};
            if (std::abs(q1.c) > box) continue;
            for (Int a2 = -box; a2 <= box; ++a2) {
                if (a2 == 0) continue;
                for (Int b2 = -box; b2 <= box; ++b2) {
                    const Int n2 = sub(mul(b2, b2), d2);
                    if (n2 % (4 * a2) != 0) continue;
                    const BinaryQF q2{a2, b2, n2 / (4 * a2)};
                    if (codiscriminant(q1, q2) != t) continue;
                    if (pair_size(q1, q2) > box) continue;
                    pairs.push_back({q1, q2, t});
                }
            }
        }
    }

    std::unordered_map<PairKey, int, PairKeyHash> index;
    index.reserve(pairs.size() * 2);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        index.emplace(PairKey{p.q1.a, p.q1.b, p.q1.c, p.q2.a, p.q2.b, p.q2.c}, static_cast<int>(i));
    }

    const std::array<UnimodularMatrix, 3> gens{UnimodularMatrix::S(), UnimodularMatrix::T(), UnimodularMatrix::T_inv()};
    std::vector<UnimodularMatrix> words{UnimodularMatrix::identity()};
    std::vector<UnimodularMatrix> all_words;
    for (int len = 1; len <= word_len; ++len) {
        std::vector<UnimodularMatrix> next;
        for (const auto& w : words)
            for (const auto& g : gens) next.push_back(w * g);
        all_words.insert(all_words.end(), next.begin(), next.end());
        words = std::move(next);
    }

    DisjointSets sets(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (const auto& w : all_words) {
            const BinaryQF r1 = act(pairs[i].q1, w), r2 = act(pairs[i].q2, w);
            const auto it = index.find(PairKey{r1.a, r1.b, r1.c, r2.a, r2.b, r2.c});
            if (it != index.end()) sets.unite(static_cast<int>(i), it->second);
        }
    }
    Int components = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (sets.find(static_cast<int>(i)) == static_cast<int>(i)) ++components;
    return components;
}

std::vector<ClassTableRow> class_table(const std::vector<Int>& d1s, const std::vector<Int>& d2s,
                                       const std::vector<Int>& ts, Int D1, Int D2) {
    std::vector<ClassTableRow> rows;
    for (Int d1 : d1s)
        for (Int d2 : d2s)
            for (Int t : ts) {
                if (mul(t, t) == mul(d1, d2)) continue;
                const auto reps = pair_class_reps(d1, d2, t);
                Int hw = 0;
                for (const auto& c : reps) hw += omega(D1, c.representative.q1) * omega(D2, c.representative.q2);
                rows.push_back({d1, d2, t, D1, D2, static_cast<Int>(reps.size()), hw});
            }
    return rows;
}

void write_class_table_csv(std::ostream& os, const std::vector<ClassTableRow>& rows) {
    os << "d1,d2,t,D1,D2,h_plain,h_weighted\n";
    for (const auto& r : rows)
        os << r.d1 << ',' << r.d2 << ',' << r.t << ',' << r.D1 << ',' << r.D2 << ',' << r.h_plain << ',' << r.h_weighted << '\n';
}

}  // namespace qfkit
