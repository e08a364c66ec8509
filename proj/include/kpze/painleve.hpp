#pragma once

// Ablowitz-Segur solutions of Painleve II, u'' = x u + 2 u^3, normalised by
// u(x) ~ sqrt(gamma) Ai(x) as x -> +inf, and the distribution functions of the
// thinned Airy and GOE largest points built from them.

#include <array>
#include <string_view>
#include <vector>

namespace kpze::painleve {

struct ThinningParams {
    double v = 0.0;
    double gamma = 0.0;   // 1 - e^{-v}
    double gamma2 = 0.0;  // 1 - e^{-2v}

    static ThinningParams from_v(double v);
    static ThinningParams from_gamma(double gamma);
};

/// Right anchor where the Airy boundary data are imposed.
inline constexpr double kXStart = 8.0;
inline constexpr double kXMinLimit = -200.0;

/// Sampled solution on [x_min, x_start]. Besides (u, u') every node carries
/// the running integrals from the node up to x_start of u, u^2 and x u^2, so
/// that integrals down to any s inside the range are a short local solve away.
class Painleve2Solution {
public:
    double gamma() const noexcept { return gamma_; }
    double x_start() const noexcept { return x_start_; }
    double x_min() const noexcept { return grid_.empty() ? x_start_ : grid_.front(); }
    double residual() const noexcept { return residual_; }
    double tolerance() const noexcept { return tol_; }

    const std::vector<double>& grid() const noexcept { return grid_; }  // ascending
    const std::vector<double>& u() const noexcept { return u_; }
    const std::vector<double>& u_prime() const noexcept { return u_prime_; }

    bool covers(double s) const noexcept { return s >= x_min(); }

    /// (u, u', \int_s^{x_start} u, \int_s^{x_start} u^2, \int_s^{x_start} x u^2)
    std::array<double, 5> state_at(double s) const;

    /// \int_s^inf u(x) dx, with the (x_start, inf) part in closed form.
    double mu(double s) const;
    /// \int_s^inf (t - s) u(t)^2 dt.
    double tail_moment(double s) const;

private:
    friend Painleve2Solution solve_uas(double gamma, double x_min, double tol);

    double gamma_ = 0.0;
    double x_start_ = kXStart;
    double residual_ = 0.0;
    double tol_ = 0.0;
    std::vector<double> grid_, u_, u_prime_;
    std::vector<double> int_u_, int_u2_, int_xu2_;
};

/// Integrates backward from x_start to x_min. residual is the largest per-step
/// defect |Delta u' - \int (x u + 2 u^3)| over the grid.
Painleve2Solution solve_uas(double gamma, double x_min, double tol = 1e-8);

double mu_integral(double s, double gamma, double tol = 1e-8);

/// exp(-\int_s^inf (t - s) u_AS(t; 1 - e^{-v})^2 dt).
double f2_analytic(double s, double v, double tol = 1e-8);

struct F1Parts {
    double f2_2v = 1.0;    // F_2(s, 2v)
    double mu = 0.0;       // mu(s, gamma_2)
    double radicand = 1.0;
    double value = 1.0;
};

F1Parts f1_parts(double s, double v, double tol = 1e-8);
double f1_analytic(double s, double v, double tol = 1e-8);

enum class Region { boutroux, stokes, hastings_mcleod };

std::string_view to_string(Region r);

inline constexpr double kHmThreshold = 0.94280904158206336587;  // 2 sqrt(2) / 3
inline constexpr double kDefaultZeta0 = 0.3;
inline constexpr double kDefaultX0 = 5.0;

/// -log(1 - gamma) / (-x)^{3/2}.
double aleph(double x, double gamma);
/// Same with v = -log(1 - gamma) given directly (no cancellation near gamma = 1).
double aleph_from_v(double x, double v);

Region classify_aleph(double aleph_value, double zeta0 = kDefaultZeta0);
Region classify_region(double x, double gamma, double zeta0 = kDefaultZeta0);

/// Leading Hastings-McLeod-region asymptotic with the O((-x)^{-3/2}) remainder
/// dropped. Negative by the sign convention of that expansion.
double uas_hm_asymptotic(double x, double v, double x0 = kDefaultX0);

struct StokesWindow {
    double lo = 0.0;  // -(2 sqrt2/3 - zeta0)^{-2/3} s^{1 - 2 delta/3}
    double hi = 0.0;  // -(2 sqrt2/3)^{-2/3} s^{1 - 2 delta/3}
};

StokesWindow stokes_window(double s, double delta, double zeta0 = kDefaultZeta0);

/// gamma-bar = 1 - exp(-s^{3/2 - delta}).
double gamma_bar(double s, double delta);

struct StokesReport {
    double s = 0.0;
    double delta = 0.0;
    StokesWindow window;
    double max_abs_u = 0.0;    // over the window
    double reference = 0.0;    // s^{2 - delta/3}
    double mu_total = 0.0;     // mu(-s, gamma-bar)
    double mu_window = 0.0;    // \int over the window
    double mu_non_stokes = 0.0;
};

/// Solves at gamma-bar(s, delta) and reports |u_AS| over the Stokes window.
StokesReport explore_stokes(double s, double delta, double zeta0 = kDefaultZeta0,
                            double tol = 1e-10);

}  // namespace kpze::painleve
