#include "kpze/error.hpp"
#include "kpze/fredholm.hpp"
#include "kpze/painleve.hpp"
#include "kpze/specfun.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>
#include <doctest.h>

using namespace kpze;
using namespace kpze::painleve;

TEST_SUITE("painleve") {
    TEST_CASE("thinning parameters") {
        for (double v : {0.0, 1e-8, 0.288, 1.0, 3.0, 20.0}) {
            const auto p = ThinningParams::from_v(v);
            CHECK(p.gamma == doctest::Approx(1.0 - std::exp(-v)).epsilon(1e-15));
            CHECK(p.gamma2 == doctest::Approx(1.0 - std::exp(-2 * v)).epsilon(1e-15));
            CHECK(p.gamma2 == doctest::Approx(p.gamma * (2.0 - p.gamma)).epsilon(1e-14));
        }
        const auto q = ThinningParams::from_gamma(0.5);
        CHECK(q.v == doctest::Approx(std::log(2.0)));
        CHECK_THROWS_AS(ThinningParams::from_v(-1.0), InvalidArgument);
        CHECK_THROWS_AS(ThinningParams::from_gamma(1.0), InvalidArgument);
    }

    TEST_CASE("gamma = 0 gives the zero solution") {
        const auto sol = solve_uas(0.0, -20.0);
        for (double u : sol.u()) CHECK(u == 0.0);
        for (double up : sol.u_prime()) CHECK(up == 0.0);
        CHECK(mu_integral(-3.0, 0.0) == 0.0);
        CHECK(f2_analytic(-3.0, 0.0) == 1.0);
        CHECK(f1_analytic(-3.0, 0.0) == 1.0);
    }

    TEST_CASE("boundary data at x = 8") {
        const auto sol = solve_uas(0.5, -5.0);
        CHECK(sol.x_start() >= 8.0);
        CHECK(sol.grid().back() == sol.x_start());
        const double expected = std::sqrt(0.5) * boost::math::airy_ai(8.0);
        CHECK(sol.u().back() == doctest::Approx(expected).epsilon(1e-6));
    }

    TEST_CASE("ODE defect is small") {
        const double tol = 1e-11;
        const auto sol = solve_uas(0.9, -15.0, tol);
        CHECK(sol.residual() <= tol);
        // Fourth-order central differences of the interpolated state.
        const double h = 1e-3;
        auto d = [&](double x, int comp) {
            return (8.0 * (sol.state_at(x + h)[comp] - sol.state_at(x - h)[comp]) -
                    (sol.state_at(x + 2 * h)[comp] - sol.state_at(x - 2 * h)[comp])) /
                   (12.0 * h);
        };
        for (double x = -14.0; x <= 7.0; x += 0.73) {
            const auto c = sol.state_at(x);
            CHECK(std::fabs(d(x, 1) - (x * c[0] + 2 * c[0] * c[0] * c[0])) <= 1e-6);
            CHECK(std::fabs(d(x, 0) - c[1]) <= 1e-6);
        }
    }

    TEST_CASE("boundedness envelope on the negative axis") {
        for (double gamma : {0.3, 0.9, 0.999}) {
            const auto sol = solve_uas(gamma, -40.0);
            for (std::size_t i = 0; i < sol.grid().size(); ++i) {
                const double x = sol.grid()[i];
                if (x > -5.0) continue;
                CHECK(std::fabs(sol.u()[i]) <= 1.1 * std::sqrt(-x / 2.0));
            }
        }
    }

    TEST_CASE("divergence near the Hastings-McLeod solution is reported") {
        try {
            solve_uas(1.0 - 1e-12, -60.0);
            FAIL("expected a divergence error");
        } catch (const DivergenceError& e) {
            CHECK(e.last_good_x() < 0.0);
            CHECK(e.last_good_x() > -60.0);
        }
    }

    TEST_CASE("invalid solver arguments") {
        CHECK_THROWS_AS(solve_uas(1.0, -5.0), InvalidArgument);
        CHECK_THROWS_AS(solve_uas(-0.1, -5.0), InvalidArgument);
        CHECK_THROWS_AS(solve_uas(0.5, -201.0), InvalidArgument);
        CHECK_THROWS_AS(solve_uas(0.5, -5.0, 0.0), InvalidArgument);
        const auto sol = solve_uas(0.5, -5.0);
        CHECK_THROWS_AS(sol.state_at(-6.0), InvalidArgument);
    }

    TEST_CASE("mu integral") {
        const double m = mu_integral(5.0, 0.5);
        CHECK(m > 0.0);
        CHECK(m < 1e-3);
        // Linear regime: u ~ sqrt(gamma) Ai.
        CHECK(m == doctest::Approx(std::sqrt(0.5) * specfun::airy_tail(5.0)).epsilon(1e-6));
        // Refinement oracle.
        const auto coarse = solve_uas(0.9, -10.0, 1e-8);
        const auto fine = solve_uas(0.9, -10.0, 1e-11);
        CHECK(std::fabs(coarse.mu(-10.0) - fine.mu(-10.0)) <= 1e-5);
        CHECK(std::fabs(coarse.tail_moment(-10.0) - fine.tail_moment(-10.0)) <= 1e-5);
    }

    TEST_CASE("F2 examples") {
        CHECK(f2_analytic(-4.0, 0.0) == 1.0);
        for (double v : {0.1, 1.0, 5.0}) CHECK(std::fabs(f2_analytic(6.0, v) - 1.0) <= 1e-4);
        CHECK(std::fabs(f2_analytic(-2.0, 1.0) - fredholm::fredholm_det_airy(-2.0, 1.0 - std::exp(-1.0))) <= 1e-4);
    }

    TEST_CASE("F2 in the weak-thinning limit") {
        // -log F2 = gamma \int_s^inf (t - s) Ai^2 + O(gamma^2).
        const double v = 1e-6;
        const double gamma = -std::expm1(-v);
        for (double s : {-4.0, -1.0, 1.0}) {
            const double lin = gamma * (specfun::airy_t_sq_tail(s) - s * specfun::airy_sq_tail(s));
            CHECK(-std::log(f2_analytic(s, v)) == doctest::Approx(lin).epsilon(1e-4));
        }
    }

    TEST_CASE("F1 examples and monotonicity") {
        CHECK(f1_analytic(0.0, 0.0) == 1.0);
        CHECK(f1_analytic(-2.0, 0.0) == 1.0);
        const double a = f1_analytic(0.0, 2.0);
        CHECK(a > 0.0);
        CHECK(a < 1.0);
        double prev_v = 1.0;
        for (double v : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double f = f1_analytic(0.0, v);
            CHECK(f <= prev_v);
            prev_v = f;
        }
        for (double v : {0.288, 1.0, 3.0}) {
            double prev_s = 0.0;
            double prev_f2 = 0.0;
            for (double s = -8.0; s <= 4.0; s += 0.5) {
                const auto parts = f1_parts(s, v);
                CHECK(parts.radicand >= 0.0);
                CHECK(parts.value > 0.0);
                CHECK(parts.value <= 1.0);
                CHECK(parts.value >= prev_s);
                const double f2 = f2_analytic(s, v);
                CHECK(f2 > 0.0);
                CHECK(f2 <= 1.0);
                CHECK(f2 >= prev_f2);
                prev_s = parts.value;
                prev_f2 = f2;
            }
        }
    }

    TEST_CASE("GOE Tracy-Widom moments from the v -> inf limit") {
        // Mean and variance of TW_1 are -1.2065335745820 and 1.6077810345810.
        double m1 = 0.0, m2 = 0.0;
        const double h = 0.02;
        double prev = f1_analytic(-9.0, 15.0);
        for (double x = -9.0; x < 7.0 - 1e-12; x += h) {
            const double next = f1_analytic(x + h, 15.0);
            const double mid = x + h / 2;
            m1 += mid * (next - prev);
            m2 += mid * mid * (next - prev);
            prev = next;
        }
        CHECK(m1 == doctest::Approx(-1.2065335745820).epsilon(1e-4));
        CHECK(m2 - m1 * m1 == doctest::Approx(1.6077810345810).epsilon(1e-4));
    }

    TEST_CASE("aleph and region classification") {
        CHECK(aleph(-3.0, 0.0) == 0.0);
        CHECK(aleph(-1.0, 1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-14));
        for (double s : {5.0, 10.0}) {
            const double delta = 0.2;
            const double x = -std::pow(s, 1.0 - 2.0 * delta / 3.0) * std::pow(kHmThreshold, -2.0 / 3.0);
            CHECK(std::fabs(aleph_from_v(x, std::pow(s, 1.5 - delta)) - kHmThreshold) <= 1e-9);
            const auto w = stokes_window(s, delta);
            CHECK(w.hi == doctest::Approx(x).epsilon(1e-14));
            CHECK(w.lo < w.hi);
        }
        CHECK(classify_aleph(10.0) == Region::hastings_mcleod);
        CHECK(classify_aleph(0.1, 0.3) == Region::boutroux);
        CHECK(classify_aleph(0.9, 0.3) == Region::stokes);
        CHECK(classify_aleph(kHmThreshold) == Region::hastings_mcleod);
        CHECK(classify_region(-1.0, 1.0 - std::exp(-10.0)) == Region::hastings_mcleod);
        CHECK_THROWS_AS(aleph(0.0, 0.5), InvalidArgument);
        CHECK_THROWS_AS(classify_region(-1.0, 0.5, 1.0), InvalidArgument);
        CHECK(to_string(Region::stokes) == "stokes");
    }

    TEST_CASE("Hastings-McLeod region asymptotic") {
        CHECK(uas_hm_asymptotic(-20.0, 1000.0) == doctest::Approx(-std::sqrt(10.0)).epsilon(1e-9));
        const double v = kHmThreshold * std::pow(20.0, 1.5) + 1.0;
        const double expected = -std::sqrt(10.0) * (1.0 - std::exp(-1.0) / (std::numbers::pi * std::pow(20.0, 0.75) * std::pow(2.0, 1.25)));
        CHECK(uas_hm_asymptotic(-20.0, v) == doctest::Approx(expected).epsilon(1e-12));
        // x = -20 with gamma = 1 - 1e-6 lies in the Boutroux region.
        CHECK_THROWS_AS(uas_hm_asymptotic(-20.0, -std::log(1e-6)), InvalidArgument);
        CHECK_THROWS_AS(uas_hm_asymptotic(-4.0, 100.0), InvalidArgument);
    }

    TEST_CASE("ODE solution against the Hastings-McLeod asymptotic (absolute values)") {
        const double v = 15.0;
        const auto sol = solve_uas(-std::expm1(-v), -7.0, 1e-10);
        constexpr double c = 1.0;  // frozen remainder constant
        for (double x : {-5.0, -5.5, -6.0}) {
            const double u = sol.state_at(x)[0];
            const double a = uas_hm_asymptotic(x, v);
            const double scale = std::sqrt(-x / 2.0);
            CHECK(std::fabs(std::fabs(u) - std::fabs(a)) <= 0.05 * scale + c * std::pow(-x, -1.5) * scale);
        }
    }

    TEST_CASE("non-Stokes part of mu grows at most like s^{3/2}") {
        constexpr double C = 0.5;  // frozen
        for (double s : {5.0, 8.0, 11.0, 15.0}) {
            const auto r = explore_stokes(s, 0.3);
            CHECK(std::fabs(r.mu_non_stokes) <= C * std::pow(s, 1.5));
            CHECK(r.mu_total == doctest::Approx(r.mu_window + r.mu_non_stokes).epsilon(1e-12));
            CHECK(r.reference == doctest::Approx(std::pow(s, 2.0 - 0.1)).epsilon(1e-14));
        }
    }
}
