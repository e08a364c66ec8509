#include "kpze/quadrature.hpp"

#include "kpze/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace kpze::quad {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw InvalidArgument("gauss_legendre: order must be positive");
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess for the i-th largest root.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b, double tol,
                         double abs_floor) {
    AdaptiveResult out;
    out.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 10, tol, &out.error_estimate);
    if (!std::isfinite(out.value) ||
        out.error_estimate > std::max(10.0 * tol * std::fabs(out.value), abs_floor)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "adaptive quadrature did not converge on [%g, %g]: estimate %.6g, error %.3g",
                      a, b, out.value, out.error_estimate);
        throw AccuracyError(buf);
    }
    return out;
}

}  // namespace kpze::quad
