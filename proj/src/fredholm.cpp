#include "kpze/fredholm.hpp"

#include "kpze/error.hpp"
#include "kpze/quadrature.hpp"
#include "kpze/specfun.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace kpze::fredholm {

double cutoff_for(double s) { return std::max(s + 20.0, 12.0); }

QuadratureRule make_rule(double s, int order) {
    if (order < 1) throw InvalidArgument("make_rule: order must be positive");
    const quad::GaussLegendre gl = quad::gauss_legendre(order);
    QuadratureRule rule;
    rule.order = order;
    rule.s = s;
    rule.cutoff = cutoff_for(s);
    const double length = rule.cutoff - s;
    const double denom = std::expm1(kStretch);
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        const double u = 0.5 * (gl.nodes[i] + 1.0);
        rule.nodes[i] = s + length * std::expm1(kStretch * u) / denom;
        rule.weights[i] = 0.5 * gl.weights[i] * length * kStretch * std::exp(kStretch * u) / denom;
    }
    return rule;
}

double airy_kernel(double x, double y) {
    detail::require_finite(x, "airy_kernel");
    detail::require_finite(y, "airy_kernel");
    if (std::fabs(x - y) < 1e-7) {
        const double m = 0.5 * (x + y);
        const specfun::AiryValue a = specfun::airy(m);
        return a.ai_prime * a.ai_prime - m * a.ai * a.ai;
    }
    const specfun::AiryValue a = specfun::airy(x);
    const specfun::AiryValue b = specfun::airy(y);
    return (a.ai * b.ai_prime - a.ai_prime * b.ai) / (x - y);
}

double nystrom_det(const QuadratureRule& rule, double gamma) {
    const int n = rule.order;
    std::vector<specfun::AiryValue> airy(n);
    std::vector<double> root_w(n);
    for (int i = 0; i < n; ++i) {
        airy[i] = specfun::airy(rule.nodes[i]);
        root_w[i] = std::sqrt(rule.weights[i]);
    }
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        const double xi = rule.nodes[i];
        m(i, i) = 1.0 - gamma * rule.weights[i] *
                            (airy[i].ai_prime * airy[i].ai_prime - xi * airy[i].ai * airy[i].ai);
        for (int j = i + 1; j < n; ++j) {
            const double k = (airy[i].ai * airy[j].ai_prime - airy[i].ai_prime * airy[j].ai) /
                             (xi - rule.nodes[j]);
            const double entry = -gamma * root_w[i] * k * root_w[j];
            m(i, j) = entry;
            m(j, i) = entry;
        }
    }
    return m.partialPivLu().determinant();
}

DetResult fredholm_det_airy_report(double s, double gamma, int order) {
    detail::require_finite(s, "fredholm_det_airy");
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw InvalidArgument("fredholm_det_airy: gamma must lie in [0, 1]");
    }
    if (order < 10) throw InvalidArgument("fredholm_det_airy: order must be >= 10");
    if (s < -40.0) throw InvalidArgument("fredholm_det_airy: s must be >= -40");
    DetResult r;
    r.order = order;
    r.s = s;
    r.gamma = gamma;
    if (gamma == 0.0) return r;
    r.value = nystrom_det(make_rule(s, order), gamma);
    r.value_doubled = nystrom_det(make_rule(s, 2 * order), gamma);
    r.certificate = std::fabs(r.value - r.value_doubled);
    if (!(r.certificate <= kCertificateFailure)) {
        throw AccuracyError("fredholm_det_airy: order " + std::to_string(order) + " gives " +
                            std::to_string(r.value) + ", order " + std::to_string(2 * order) +
                            " gives " + std::to_string(r.value_doubled));
    }
    return r;
}

double fredholm_det_airy(double s, double gamma, int order) {
    return fredholm_det_airy_report(s, gamma, order).value;
}

}  // namespace kpze::fredholm
