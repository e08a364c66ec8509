#include "kpze/painleve.hpp"

#include "kpze/error.hpp"
#include "kpze/specfun.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <string>

namespace kpze::painleve {
namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 5>;

// Backward-running augmented system: components 2..4 accumulate
// \int_x^{x_start} of u, u^2 and x u^2.
struct AugmentedPII {
    void operator()(const State& y, State& dy, double x) const {
        const double u = y[0];
        dy[0] = y[1];
        dy[1] = x * u + 2.0 * u * u * u;
        dy[2] = -u;
        dy[3] = -u * u;
        dy[4] = -x * u * u;
    }
};

struct Tolerances {
    double abs;
    double rel;
};

// The Ai mode grows backward from x_start, so an absolute error at the anchor
// turns into a relative amplitude error; keep the absolute floor far below u.
Tolerances internal_tolerances(double tol) {
    return {1e-26, std::clamp(tol * 1e-3, 1e-13, 1e-10)};
}

void check_gamma(double gamma, const char* who) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw InvalidArgument(std::string(who) + ": gamma must lie in [0, 1), got " +
                              std::to_string(gamma));
    }
}

double envelope(double x) { return 10.0 * std::sqrt(std::max(-x, 0.0) / 2.0) + 10.0; }

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGlNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                            0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGlWeights = {0.2369268850561891, 0.4786286704993665,
                                              0.5688888888888889, 0.4786286704993665,
                                              0.2369268850561891};

}  // namespace

ThinningParams ThinningParams::from_v(double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("ThinningParams: v must be >= 0");
    return {v, -std::expm1(-v), -std::expm1(-2.0 * v)};
}

ThinningParams ThinningParams::from_gamma(double gamma) {
    check_gamma(gamma, "ThinningParams");
    const double v = -std::log1p(-gamma);
    return {v, gamma, gamma * (2.0 - gamma)};
}

Painleve2Solution solve_uas(double gamma, double x_min, double tol) {
    check_gamma(gamma, "solve_uas");
    if (!(x_min >= kXMinLimit) || x_min >= kXStart) {
        throw InvalidArgument("solve_uas: x_min must lie in [-200, 8), got " + std::to_string(x_min));
    }
    if (!(tol > 0.0)) throw InvalidArgument("solve_uas: tol must be positive");

    Painleve2Solution sol;
    sol.gamma_ = gamma;
    sol.tol_ = tol;
    sol.x_start_ = kXStart;

    std::vector<double> xs;
    std::vector<State> states;

    const double amp = std::sqrt(gamma);
    const specfun::AiryValue a = specfun::airy(kXStart);
    State y0 = {amp * a.ai, amp * a.ai_prime, 0.0, 0.0, 0.0};
    xs.push_back(kXStart);
    states.push_back(y0);

    if (gamma == 0.0) {
        // Zero boundary data give the zero solution.
        const int n = static_cast<int>(std::ceil((kXStart - x_min) / 0.05));
        for (int i = 1; i <= n; ++i) {
            xs.push_back(std::max(kXStart - i * 0.05, x_min));
            states.push_back(State{});
        }
    } else {
        const Tolerances t = internal_tolerances(tol);
        auto stepper = odeint::make_dense_output(t.abs, t.rel, odeint::runge_kutta_dopri5<State>());
        stepper.initialize(y0, kXStart, -1e-3);
        const AugmentedPII sys;
        State mid{};
        double residual = 0.0;
        std::size_t steps = 0;
        while (stepper.current_time() > x_min) {
            if (++steps > 5'000'000) throw NumericError("solve_uas: step budget exhausted");
            const auto [x_prev, x_next] = stepper.do_step(sys);
            const double x_hi = x_prev;
            const double x_lo = std::max(x_next, x_min);
            State y_lo{};
            if (x_lo == x_next) {
                y_lo = stepper.current_state();
            } else {
                stepper.calc_state(x_lo, y_lo);
            }
            if (!std::isfinite(y_lo[0]) || std::fabs(y_lo[0]) > envelope(x_lo)) {
                throw DivergenceError("solve_uas: |u| left the envelope 10 sqrt(-x/2) + 10 below x = " +
                                          std::to_string(xs.back()),
                                      xs.back());
            }
            // Defect of u'' = x u + 2 u^3 over the step, integrated against the
            // dense-output interpolant.
            const double half = 0.5 * (x_hi - x_lo), centre = 0.5 * (x_hi + x_lo);
            double integral = 0.0;
            for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
                const double x = centre + half * kGlNodes[i];
                stepper.calc_state(x, mid);
                integral += kGlWeights[i] * (x * mid[0] + 2.0 * mid[0] * mid[0] * mid[0]);
            }
            integral *= half;
            residual = std::max(residual, std::fabs(states.back()[1] - y_lo[1] - integral));
            xs.push_back(x_lo);
            states.push_back(y_lo);
        }
        sol.residual_ = residual;
    }

    const std::size_t n = xs.size();
    sol.grid_.resize(n);
    sol.u_.resize(n);
    sol.u_prime_.resize(n);
    sol.int_u_.resize(n);
    sol.int_u2_.resize(n);
    sol.int_xu2_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        sol.grid_[i] = xs[j];
        sol.u_[i] = states[j][0];
        sol.u_prime_[i] = states[j][1];
        sol.int_u_[i] = states[j][2];
        sol.int_u2_[i] = states[j][3];
        sol.int_xu2_[i] = states[j][4];
    }
    return sol;
}

std::array<double, 5> Painleve2Solution::state_at(double s) const {
    if (s < x_min() || s > x_start_) {
        throw InvalidArgument("Painleve2Solution::state_at: s = " + std::to_string(s) +
                              " outside the solved range");
    }
    const auto it = std::lower_bound(grid_.begin(), grid_.end(), s);
    const auto i = static_cast<std::size_t>(it - grid_.begin());
    State y = {u_[i], u_prime_[i], int_u_[i], int_u2_[i], int_xu2_[i]};
    if (grid_[i] == s || gamma_ == 0.0) return y;
    const Tolerances t = internal_tolerances(tol_);
    const double x0 = grid_[i];
    odeint::integrate_adaptive(odeint::make_controlled(t.abs, t.rel, odeint::runge_kutta_dopri5<State>()),
                               AugmentedPII{}, y, x0, s, -(x0 - s) / 4.0);
    return y;
}

double Painleve2Solution::mu(double s) const {
    if (gamma_ == 0.0) return 0.0;
    const double amp = std::sqrt(gamma_);
    if (s >= x_start_) return amp * specfun::airy_tail(s);
    return state_at(s)[2] + amp * specfun::airy_tail(x_start_);
}

double Painleve2Solution::tail_moment(double s) const {
    if (gamma_ == 0.0) return 0.0;
    if (s >= x_start_) {
        return gamma_ * (specfun::airy_t_sq_tail(s) - s * specfun::airy_sq_tail(s));
    }
    const auto y = state_at(s);
    const double tail =
        gamma_ * (specfun::airy_t_sq_tail(x_start_) - s * specfun::airy_sq_tail(x_start_));
    return (y[4] - s * y[3]) + tail;
}

namespace {

Painleve2Solution solve_for(double s, double gamma, double tol) {
    return solve_uas(gamma, std::min(s, kXStart - 1.0), tol);
}

}  // namespace

double mu_integral(double s, double gamma, double tol) {
    detail::require_finite(s, "mu_integral");
    check_gamma(gamma, "mu_integral");
    if (gamma == 0.0) return 0.0;
    if (s >= kXStart) return std::sqrt(gamma) * specfun::airy_tail(s);
    return solve_for(s, gamma, tol).mu(s);
}

double f2_analytic(double s, double v, double tol) {
    detail::require_finite(s, "f2_analytic");
    const ThinningParams p = ThinningParams::from_v(v);
    check_gamma(p.gamma, "f2_analytic");
    if (p.gamma == 0.0) return 1.0;
    if (s >= kXStart) {
        return std::exp(-p.gamma * (specfun::airy_t_sq_tail(s) - s * specfun::airy_sq_tail(s)));
    }
    return std::exp(-solve_for(s, p.gamma, tol).tail_moment(s));
}

F1Parts f1_parts(double s, double v, double tol) {
    detail::require_finite(s, "f1_analytic");
    const ThinningParams p = ThinningParams::from_v(v);
    check_gamma(p.gamma2, "f1_analytic (gamma_2)");
    F1Parts out;
    if (p.gamma2 == 0.0) return out;
    if (s >= kXStart) {
        out.f2_2v = f2_analytic(s, 2.0 * v, tol);
        out.mu = mu_integral(s, p.gamma2, tol);
    } else {
        const Painleve2Solution sol = solve_for(s, p.gamma2, tol);
        out.f2_2v = std::exp(-sol.tail_moment(s));
        out.mu = sol.mu(s);
    }
    out.radicand =
        1.0 + (std::cosh(out.mu) - std::sqrt(p.gamma2) * std::sinh(out.mu) - 1.0) / (2.0 - p.gamma);
    if (out.radicand < 0.0) {
        throw NumericError("f1_analytic: negative radicand " + std::to_string(out.radicand) +
                           " at s = " + std::to_string(s) + ", v = " + std::to_string(v) +
                           " (internal consistency failure)");
    }
    out.value = std::sqrt(out.f2_2v) * std::sqrt(out.radicand);
    return out;
}

double f1_analytic(double s, double v, double tol) { return f1_parts(s, v, tol).value; }

std::string_view to_string(Region r) {
    switch (r) {
        case Region::boutroux: return "boutroux";
        case Region::stokes: return "stokes";
        case Region::hastings_mcleod: return "hastings_mcleod";
    }
    return "unknown";
}

double aleph_from_v(double x, double v) {
    if (!(x < 0.0)) throw InvalidArgument("aleph: x must be negative");
    return v / std::pow(-x, 1.5);
}

double aleph(double x, double gamma) {
    check_gamma(gamma, "aleph");
    return aleph_from_v(x, -std::log1p(-gamma));
}

Region classify_aleph(double a, double zeta0) {
    if (!(zeta0 > 0.0 && zeta0 < kHmThreshold)) {
        throw InvalidArgument("classify_region: zeta0 must lie in (0, 2 sqrt(2)/3)");
    }
    if (a >= kHmThreshold) return Region::hastings_mcleod;
    if (a > kHmThreshold - zeta0) return Region::stokes;
    return Region::boutroux;
}

Region classify_region(double x, double gamma, double zeta0) {
    return classify_aleph(aleph(x, gamma), zeta0);
}

double uas_hm_asymptotic(double x, double v, double x0) {
    if (!(x < 0.0) || -x < x0) {
        throw InvalidArgument("uas_hm_asymptotic: requires -x >= x0 = " + std::to_string(x0));
    }
    if (!(v > 0.0)) throw InvalidArgument("uas_hm_asymptotic: v must be positive");
    const double z = -x;
    if (aleph_from_v(x, v) < kHmThreshold) {
        throw InvalidArgument(
            "uas_hm_asymptotic: requires the Hastings-McLeod region aleph >= 2 sqrt(2)/3");
    }
    const double correction = std::exp(kHmThreshold * std::pow(z, 1.5) - v) /
                              (std::numbers::pi * std::pow(z, 0.75) * std::pow(2.0, 1.25));
    return -std::sqrt(z / 2.0) * (1.0 - correction);
}

StokesWindow stokes_window(double s, double delta, double zeta0) {
    if (!(s > 0.0)) throw InvalidArgument("stokes_window: s must be positive");
    if (!(zeta0 > 0.0 && zeta0 < kHmThreshold)) {
        throw InvalidArgument("stokes_window: zeta0 must lie in (0, 2 sqrt(2)/3)");
    }
    const double scale = std::pow(s, 1.0 - 2.0 * delta / 3.0);
    return {-std::pow(kHmThreshold - zeta0, -2.0 / 3.0) * scale,
            -std::pow(kHmThreshold, -2.0 / 3.0) * scale};
}

double gamma_bar(double s, double delta) { return -std::expm1(-std::pow(s, 1.5 - delta)); }

StokesReport explore_stokes(double s, double delta, double zeta0, double tol) {
    if (!(delta > 0.0 && delta < 0.4)) throw InvalidArgument("explore_stokes: delta must lie in (0, 2/5)");
    StokesReport r;
    r.s = s;
    r.delta = delta;
    r.window = stokes_window(s, delta, zeta0);
    r.reference = std::pow(s, 2.0 - delta / 3.0);
    const double g = gamma_bar(s, delta);
    const double x_min = std::min(-s, r.window.lo);
    const Painleve2Solution sol = solve_uas(g, x_min, tol);
    for (std::size_t i = 0; i < sol.grid().size(); ++i) {
        const double x = sol.grid()[i];
        if (x > r.window.lo && x < r.window.hi) r.max_abs_u = std::max(r.max_abs_u, std::fabs(sol.u()[i]));
    }
    r.mu_total = sol.mu(-s);
    const double lo = std::max(r.window.lo, -s);
    const double hi = std::max(r.window.hi, -s);
    r.mu_window = sol.mu(lo) - sol.mu(hi);
    r.mu_non_stokes = r.mu_total - r.mu_window;
    return r;
}

}  // namespace kpze::painleve
