#pragma once

#include <functional>

namespace qfkit {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // Kronrod-Gauss difference summed over panels
    int intervals = 0;
};

using RealFunction = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7/15) with global error control: the panel with the
// largest error estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol |value|). Panels are accumulated in left-to-right order.
// Throws numerical_error when max_intervals is reached.
QuadResult integrate(const RealFunction& f, double a, double b, QuadOptions opts = {});

// Integral over [a, inf) through x = a + t/(1 - t).
QuadResult integrate_to_infinity(const RealFunction& f, double a, QuadOptions opts = {});

}  // namespace qfkit
