#pragma once

// Airy function Ai, its derivative and its running integral on the real line.
//
// Ai and Ai' use the Maclaurin series (evaluated in extended precision) on
// [-8, 6] and the classical Poincare expansions outside. The running
// integral is anchored at -40 with an integration-by-parts tail expansion and
// filled in by adaptive Gauss-Kronrod quadrature over a cached panel table.

namespace kpze::specfun {

enum class AiryRegime { series, positive_asymptotic, negative_asymptotic };

struct AiryValue {
    double x = 0.0;
    double ai = 0.0;
    double ai_prime = 0.0;
    AiryRegime regime = AiryRegime::series;
};

/// Crossover points between the series and the asymptotic branches.
inline constexpr double kSeriesLower = -8.0;
inline constexpr double kSeriesUpper = 6.0;

/// Lower anchor of the running-integral table.
inline constexpr double kCdfAnchor = -40.0;

AiryValue airy(double x);

double airy_ai(double x);
double airy_ai_prime(double x);

/// \int_{-\infty}^x Ai(t) dt.
double airy_cdf(double x);

/// \int_x^{\infty} Ai(t) dt, accurate in relative terms for large positive x.
double airy_tail(double x);

/// Branch-specific evaluators; exposed for the stitching tests.
AiryValue airy_series(double x);
AiryValue airy_asymptotic(double x);

/// Leading negative-axis term cos(2/3 (-x)^{3/2} - pi/4) / (sqrt(pi) (-x)^{1/4}).
double airy_ai_leading_negative(double x);

/// Integration-by-parts expansion of \int_{-\infty}^x Ai for x << 0.
double airy_cdf_left_expansion(double x);

/// \int_x^\infty Ai(t)^2 dt = Ai'(x)^2 - x Ai(x)^2.
double airy_sq_tail(double x);

/// \int_x^\infty t Ai(t)^2 dt = -(x^2 Ai^2 - x Ai'^2 + Ai Ai') / 3.
double airy_t_sq_tail(double x);

}  // namespace kpze::specfun
