#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qfkit/errors.hpp"
#include "qfkit/specfun.hpp"

namespace qfkit {

namespace {

using State = std::array<double, 4>;  // f, f', h, h'

State rhs(double theta, const State& y, double lambda) {
    const double c = std::cos(theta);
    const double k = lambda / (c * c);
    return {y[1], k * y[0], y[3], k * y[2]};
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [coef, k] : terms)
        for (int i = 0; i < 4; ++i) out[i] += h * coef * (*k)[i];
    return out;
}

}  // namespace

// Dormand-Prince 5(4) with per-step mixed error control; integrates over
// [0, |theta|] and reflects: f is even, h is odd.
OdePair ode_pair_f_h(double theta, double lambda, double tol) {
    constexpr double kEdge = std::numbers::pi / 2.0 - 1e-3;
    if (!std::isfinite(theta) || std::abs(theta) > kEdge)
        throw std::invalid_argument("ode_pair_f_h: |theta| must be at most pi/2 - 1e-3");
    if (!std::isfinite(lambda)) throw std::invalid_argument("ode_pair_f_h: lambda must be finite");
    if (!(tol > 0.0)) throw std::invalid_argument("ode_pair_f_h: tol must be positive");

    const double end = std::abs(theta);
    State y = {1.0, 0.0, 0.0, 1.0};
    double t = 0.0;
    double h = std::min(0.05, end);
    int steps = 0;
    while (t < end) {
        if (++steps > 200000) throw numerical_error("ode_pair_f_h: step budget exhausted");
        h = std::min(h, end - t);
        const State k1 = rhs(t, y, lambda);
        const State k2 = rhs(t + h / 5, axpy(y, h, {{1.0 / 5, &k1}}), lambda);
        const State k3 = rhs(t + 3 * h / 10, axpy(y, h, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}), lambda);
        const State k4 = rhs(t + 4 * h / 5, axpy(y, h, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}), lambda);
        const State k5 = rhs(t + 8 * h / 9,
                             axpy(y, h, {{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2}, {64448.0 / 6561, &k3}, {-212.0 / 729, &k4}}),
                             lambda);
        const State k6 = rhs(t + h,
                             axpy(y, h, {{9017.0 / 3168, &k1}, {-355.0 / 33, &k2}, {46732.0 / 5247, &k3}, {49.0 / 176, &k4},
                                         {-5103.0 / 18656, &k5}}),
                             lambda);
        const State y5 = axpy(y, h, {{35.0 / 384, &k1}, {500.0 / 1113, &k3}, {125.0 / 192, &k4}, {-2187.0 / 6784, &k5},
                                     {11.0 / 84, &k6}});
        const State k7 = rhs(t + h, y5, lambda);
        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double e = h * ((35.0 / 384 - 5179.0 / 57600) * k1[i] + (500.0 / 1113 - 7571.0 / 16695) * k3[i] +
                                  (125.0 / 192 - 393.0 / 640) * k4[i] + (-2187.0 / 6784 + 92097.0 / 339200) * k5[i] +
                                  (11.0 / 84 - 187.0 / 2100) * k6[i] - 1.0 / 40 * k7[i]);
            const double scale = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
            err = std::max(err, std::abs(e) / scale);
        }
        if (err <= 1.0) {
            t += h;
            y = y5;
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= factor;
        if (h < 1e-14) throw numerical_error("ode_pair_f_h: step size underflow");
    }
    if (theta < 0.0) return {y[0], -y[1], -y[2], y[3]};
    return {y[0], y[1], y[2], y[3]};
}

}  // namespace qfkit
