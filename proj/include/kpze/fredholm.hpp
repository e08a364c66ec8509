#pragma once

// Nystrom evaluation of det(I - gamma K_Ai) on L^2(s, inf), the distribution
// function of the largest point of the gamma-thinned Airy process.

#include <vector>

namespace kpze::fredholm {

struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing in [s, cutoff]
    std::vector<double> weights;  // positive
    int order = 0;
    double s = 0.0;
    double cutoff = 0.0;
};

/// Stretching rate of the exponential node map; nodes cluster near s where
/// the kernel oscillates fastest.
inline constexpr double kStretch = 1.5;

/// max(s + 20, 12).
double cutoff_for(double s);

/// Gauss-Legendre rule of the given order pushed through
/// t = s + (c - s)(e^{a u} - 1)/(e^a - 1), u in [0, 1].
QuadratureRule make_rule(double s, int order);

/// (Ai(x) Ai'(y) - Ai'(x) Ai(y)) / (x - y), with the diagonal limit
/// Ai'(x)^2 - x Ai(x)^2.
double airy_kernel(double x, double y);

/// det(I - gamma K) on the rule, without a convergence check.
double nystrom_det(const QuadratureRule& rule, double gamma);

struct DetResult {
    double value = 1.0;          // at the requested order
    double value_doubled = 1.0;  // at twice the order
    double certificate = 0.0;    // |value - value_doubled|
    int order = 0;
    double s = 0.0;
    double gamma = 0.0;
};

inline constexpr double kCertificateTarget = 1e-6;
inline constexpr double kCertificateFailure = 1e-4;

/// Throws AccuracyError if doubling the order moves the value by more than 1e-4.
DetResult fredholm_det_airy_report(double s, double gamma, int order = 80);
double fredholm_det_airy(double s, double gamma, int order = 80);

}  // namespace kpze::fredholm
