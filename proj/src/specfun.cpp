#include "kpze/specfun.hpp"

#include "kpze/error.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <vector>

namespace kpze {

void detail::require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw InvalidArgument(std::string(what) + ": argument must be finite");
    }
}

}  // namespace kpze

namespace kpze::specfun {
namespace {

// Ai(0) = 3^{-2/3} / Gamma(2/3), -Ai'(0) = 3^{-1/3} / Gamma(1/3).
constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kAip0 = 0.258819403792806798405183560189203963L;

constexpr int kAsymTerms = 48;

struct AsymptoticCoefficients {
    std::array<double, kAsymTerms> u{};
    std::array<double, kAsymTerms> v{};
};

const AsymptoticCoefficients& coefficients() {
    static const AsymptoticCoefficients c = [] {
        AsymptoticCoefficients out;
        out.u[0] = 1.0;
        out.v[0] = 1.0;
        for (int k = 1; k < kAsymTerms; ++k) {
            const double kk = k;
            out.u[k] = out.u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) /
                       ((2 * kk - 1) * 216 * kk);
            out.v[k] = -(6 * kk + 1) / (6 * kk - 1) * out.u[k];
        }
        return out;
    }();
    return c;
}

// Sums sign_k * c[k] / zeta^k over k = first, first + 2, ... (step 2) or
// every k (step 1), truncating at the smallest term.
double asym_sum(const std::array<double, kAsymTerms>& c, double zeta, int first, int step,
                bool alternate) {
    double sum = 0.0;
    double prev = INFINITY;
    int sign = 1;
    for (int k = first; k < kAsymTerms; k += step) {
        const double term = c[k] / std::pow(zeta, k);
        const double mag = std::fabs(term);
        if (mag > prev) break;
        sum += sign * term;
        if (mag < 1e-17 * std::fabs(sum)) break;
        prev = mag;
        if (alternate) sign = -sign;
    }
    return sum;
}

}  // namespace

AiryValue airy_series(double x) {
    const long double z = x;
    const long double z3 = z * z * z;
    // f, g are the even/odd Maclaurin solutions; fp, gp their derivatives.
    long double tf = 1.0L, tg = z, tfp = z * z / 2.0L, tgp = 1.0L;
    long double f = tf, g = tg, fp = tfp, gp = tgp;
    for (int k = 0; k < 400; ++k) {
        const long double k3 = 3.0L * k;
        tf *= z3 / ((k3 + 2) * (k3 + 3));
        tg *= z3 / ((k3 + 3) * (k3 + 4));
        tfp *= z3 / ((k3 + 3) * (k3 + 5));
        tgp *= z3 / ((k3 + 1) * (k3 + 3));
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        const long double mag = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
        if (k > 2 && mag < 1e-22L) break;
    }
    AiryValue out;
    out.x = x;
    out.ai = static_cast<double>(kAi0 * f - kAip0 * g);
    out.ai_prime = static_cast<double>(kAi0 * fp - kAip0 * gp);
    out.regime = AiryRegime::series;
    return out;
}

AiryValue airy_asymptotic(double x) {
    const auto& c = coefficients();
    constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;
    AiryValue out;
    out.x = x;
    if (x > 0.0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        const double e = std::exp(-zeta);
        const double q = std::pow(x, 0.25);
        out.ai = 0.5 * inv_sqrt_pi * e / q * asym_sum(c.u, zeta, 0, 1, true);
        out.ai_prime = -0.5 * inv_sqrt_pi * e * q * asym_sum(c.v, zeta, 0, 1, true);
        out.regime = AiryRegime::positive_asymptotic;
        return out;
    }
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double q = std::pow(z, 0.25);
    const double phase = zeta - std::numbers::pi / 4.0;
    const double cs = std::cos(phase);
    const double sn = std::sin(phase);
    const double pu = asym_sum(c.u, zeta, 0, 2, true);
    const double qu = asym_sum(c.u, zeta, 1, 2, true);
    const double pv = asym_sum(c.v, zeta, 0, 2, true);
    const double qv = asym_sum(c.v, zeta, 1, 2, true);
    out.ai = inv_sqrt_pi / q * (cs * pu + sn * qu);
    out.ai_prime = inv_sqrt_pi * q * (sn * pv - cs * qv);
    out.regime = AiryRegime::negative_asymptotic;
    return out;
}

AiryValue airy(double x) {
    detail::require_finite(x, "airy");
    if (x >= kSeriesLower && x <= kSeriesUpper) return airy_series(x);
    return airy_asymptotic(x);
}

double airy_ai(double x) { return airy(x).ai; }

double airy_ai_prime(double x) { return airy(x).ai_prime; }

double airy_ai_leading_negative(double x) {
    const double z = -x;
    return std::cos(2.0 / 3.0 * z * std::sqrt(z) - std::numbers::pi / 4.0) /
           (std::sqrt(std::numbers::pi) * std::pow(z, 0.25));
}

namespace {

// Sum_m c_m [Ai'(x) x^{-m-1} + (m+1) Ai(x) x^{-m-2}], m = 0, 3, 6, ...,
// with c_0 = 1 and c_{m+3} = c_m (m+1)(m+2). Repeated integration by parts of
// Ai = Ai''/t gives \int_{-inf}^x Ai for x < 0 and -\int_x^inf Ai for x > 0.
double parts_expansion(double x) {
    const AiryValue a = airy(x);
    double coeff = 1.0;
    double sum = 0.0;
    double prev = INFINITY;
    for (int m = 0; m < 90; m += 3) {
        const double term = coeff * (a.ai_prime * std::pow(x, -(m + 1)) +
                                     (m + 1) * a.ai * std::pow(x, -(m + 2)));
        const double mag = std::fabs(coeff) * (std::fabs(a.ai_prime) + (m + 1) * std::fabs(a.ai)) *
                           std::pow(std::fabs(x), -(m + 1));
        if (mag > prev) break;
        sum += term;
        if (mag <= 1e-18 * std::fabs(sum)) break;
        prev = mag;
        coeff *= static_cast<double>(m + 1) * (m + 2);
    }
    return sum;
}

constexpr double kPanelWidth = 0.5;
constexpr double kCdfUpper = 12.0;

double integrate_ai(double a, double b) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [](double t) { return airy_ai(t); }, a, b, 3, 1e-14);
}

struct CdfTable {
    double left_tail = 0.0;
    std::vector<double> cumulative;  // \int_{anchor}^{anchor + i w} Ai
    double total = 0.0;              // computed value of \int_{-inf}^{inf} Ai
};

const CdfTable& cdf_table() {
    static const CdfTable table = [] {
        CdfTable t;
        t.left_tail = parts_expansion(kCdfAnchor);
        const int panels = static_cast<int>(std::lround((kCdfUpper - kCdfAnchor) / kPanelWidth));
        t.cumulative.resize(panels + 1);
        t.cumulative[0] = 0.0;
        double acc = 0.0;
        for (int i = 0; i < panels; ++i) {
            const double a = kCdfAnchor + i * kPanelWidth;
            acc += integrate_ai(a, a + kPanelWidth);
            t.cumulative[i + 1] = acc;
        }
        t.total = t.left_tail + acc - parts_expansion(kCdfUpper);
        return t;
    }();
    return table;
}

double cdf_in_table(double x) {
    const CdfTable& t = cdf_table();
    const int last = static_cast<int>(t.cumulative.size()) - 1;
    int i = static_cast<int>(std::floor((x - kCdfAnchor) / kPanelWidth));
    i = std::clamp(i, 0, last);
    const double start = kCdfAnchor + i * kPanelWidth;
    return t.left_tail + t.cumulative[i] + integrate_ai(start, x);
}

}  // namespace

double airy_cdf_left_expansion(double x) { return parts_expansion(x); }

double airy_cdf(double x) {
    if (x == INFINITY) return cdf_table().total;
    detail::require_finite(x, "airy_cdf");
    if (x < kCdfAnchor) return parts_expansion(x);
    if (x <= kCdfUpper) return cdf_in_table(x);
    return cdf_table().total + parts_expansion(x);
}

double airy_tail(double x) {
    if (x == INFINITY) return 0.0;
    detail::require_finite(x, "airy_tail");
    if (x > kCdfUpper) return -parts_expansion(x);
    return cdf_table().total - airy_cdf(x);
}

double airy_sq_tail(double x) {
    const AiryValue a = airy(x);
    return a.ai_prime * a.ai_prime - x * a.ai * a.ai;
}

double airy_t_sq_tail(double x) {
    const AiryValue a = airy(x);
    return -(x * x * a.ai * a.ai - x * a.ai_prime * a.ai_prime + a.ai * a.ai_prime) / 3.0;
}

}  // namespace kpze::specfun
