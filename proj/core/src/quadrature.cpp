#include "qfkit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "qfkit/errors.hpp"

namespace qfkit {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights on kNodes[1], kNodes[3], kNodes[5], kNodes[7]
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const RealFunction& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(mid);
    double kron = fc * kKronrod[7];
    double gauss = fc * kGauss[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double s = f(mid - dx) + f(mid + dx);
        kron += kKronrod[i] * s;
        if (i % 2 == 1) gauss += kGauss[i / 2] * s;
    }
    kron *= half;
    gauss *= half;
    if (!std::isfinite(kron)) throw numerical_error("integrate: non-finite integrand value");
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadResult integrate(const RealFunction& f, double a, double b, QuadOptions opts) {
    if (a == b) return {};
    if (b < a) {
        QuadResult r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    std::priority_queue<Panel> heap;
    std::vector<Panel> done;
    Panel first = gk15(f, a, b);
    double value = first.value, error = first.error;
    heap.push(first);
    int count = 1;
    while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
        if (count >= opts.max_intervals) throw numerical_error("integrate: interval budget exhausted");
        Panel p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
            // cannot split further; freeze the panel
            done.push_back(p);
            if (heap.empty()) break;
            continue;
        }
        Panel l = gk15(f, p.a, m), r = gk15(f, m, p.b);
        value += l.value + r.value - p.value;
        error += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
        ++count;
    }
    while (!heap.empty()) {
        done.push_back(heap.top());
        heap.pop();
    }
    std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadResult out;
    for (const auto& p : done) {
        out.value += p.value;
        out.error += p.error;
    }
    out.intervals = static_cast<int>(done.size());
    if (out.error > std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value)))
        throw numerical_error("integrate: requested accuracy not reached");
    return out;
}

QuadResult integrate_to_infinity(const RealFunction& f, double a, QuadOptions opts) {
    auto g = [&](double t) {
        const double s = 1.0 - t;
        const double v = f(a + t / s);
        return v == 0.0 ? 0.0 : v / (s * s);
    };
    return integrate(g, 0.0, 1.0, opts);
}

}  // namespace qfkit
