#pragma once

#include <functional>
#include <vector>

namespace kpze::quad {

struct GaussLegendre {
    std::vector<double> nodes;    // ascending on (-1, 1)
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
GaussLegendre gauss_legendre(int n);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod (G15/K31) integral of f over [a, b] with relative
/// tolerance tol. Throws AccuracyError if the error estimate exceeds
/// max(tol * |value|, abs_floor).
AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                         double abs_floor = 1e-13);

}  // namespace kpze::quad
