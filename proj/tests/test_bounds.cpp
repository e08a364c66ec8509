#include "kpze/bounds.hpp"
#include "kpze/error.hpp"

#include <cmath>
#include <doctest.h>
#include <numbers>

using namespace kpze;
using namespace kpze::bounds;

TEST_SUITE("bounds") {
    TEST_CASE("constants") {
        const auto d = BoundConstants::defaults();
        CHECK(d.C == 1.0);
        CHECK(d.K2 == doctest::Approx(1.0 / 24.0));
        CHECK(d.S0 == 5.0);
        CHECK_NOTHROW(d.validate());
        CHECK_NOTHROW(BoundConstants::calibrated().validate());
        BoundConstants bad;
        bad.eta = 0.0;
        CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    }

    TEST_CASE("regimes") {
        CHECK(classify_regime(100.0, 1.0) == Regime::deep_tail);
        CHECK(classify_regime(5.0, 1e6) == Regime::goe_regime);
        CHECK(classify_regime(4.0, 8.0) == Regime::crossover);
        CHECK(to_string(Regime::goe_regime) == "goe_regime");
        CHECK_THROWS_AS(classify_regime(1.0, 1.0, 0.5), InvalidArgument);
    }

    TEST_CASE("deep tail: the 5/2 term is the larger probability") {
        const double s = 100.0, T = 1.0, eps = 0.1;
        const auto r = kpz_tail_bounds(s, T, eps, 0.1, BoundConstants{});
        CHECK(r.regime == Regime::deep_tail);
        const double five_halves = (1.0 - eps) * 2.0 / (15.0 * std::numbers::pi) * std::pow(s, 2.5);
        const double cubic = (1.0 - eps) / 24.0 * s * s * s;
        CHECK(five_halves < cubic);
        const auto moderate = kpz_tail_bounds(10.0, 1.0, eps, 0.1, BoundConstants{.S0 = 1.0});
        CHECK(moderate.dominant_upper == "upper_five_halves");
    }

    TEST_CASE("GOE regime: the cubic term dominates the lower bound") {
        const auto r = kpz_tail_bounds(5.0, 1e6, 0.1, 0.1, BoundConstants{});
        CHECK(r.regime == Regime::goe_regime);
        CHECK(r.dominant_lower == "lower_cubic");
        CHECK(r.terms_lower[1].value == doctest::Approx(std::exp(-125.0 / 24.0)));
    }

    TEST_CASE("lower <= upper with matched constants") {
        for (const auto& c : {BoundConstants{.S0 = 1.0}, BoundConstants::calibrated()}) {
            for (double s : {1.0, 2.0, 5.0, 20.0}) {
                for (double T : {1.0, 8.0, 1e3, 1e6}) {
                    const auto r = kpz_tail_bounds(s, T, 0.05, 0.1, c);
                    CHECK(r.lower() <= r.upper());
                    for (const auto& t : r.terms_upper) {
                        CHECK(t.value >= 0.0);
                        CHECK(t.value <= 1.0);
                    }
                }
            }
        }
    }

    TEST_CASE("tail bound preconditions") {
        CHECK_THROWS_AS(kpz_tail_bounds(4.0, 1.0, 0.1, 0.1, BoundConstants{}), InvalidArgument);
        CHECK_THROWS_AS(kpz_tail_bounds(6.0, 1.0, 0.4, 0.1, BoundConstants{}), InvalidArgument);
        CHECK_THROWS_AS(kpz_tail_bounds(6.0, 1.0, 0.1, 0.3, BoundConstants{}), InvalidArgument);
        CHECK_THROWS_AS(kpz_tail_bounds(6.0, 0.0, 0.1, 0.1, BoundConstants{}), InvalidArgument);
    }

    TEST_CASE("F1 conditional curve") {
        CHECK(f1_bound_curve(1.0, 0.2) == doctest::Approx(std::exp(-1.0 / (3.0 * std::numbers::pi))));
        CHECK(f1_bound_curve(1.0, 0.2) == doctest::Approx(0.899).epsilon(1e-3));
        double prev = 1.0;
        for (double s = 1.0; s <= 5.0; s += 0.5) {
            const double v = f1_bound_curve(s, 0.2);
            CHECK(v < prev);
            prev = v;
        }
        CHECK(f1_bound_curve(2.0, 1e-9) == doctest::Approx(std::exp(-8.0 / (3.0 * std::numbers::pi))));
        CHECK_THROWS_AS(f1_bound_curve(0.5, 0.2), InvalidArgument);
        CHECK_THROWS_AS(f1_bound_curve(2.0, 0.4), InvalidArgument);
    }

    TEST_CASE("deviation curves") {
        const auto d = deviation_bound_curves(4.0, 1.0, 0.3, 1.0, BoundConstants{});
        CHECK(d.weak == doctest::Approx(std::exp(-8.0)));
        CHECK(d.weak == doctest::Approx(3.35e-4).epsilon(1e-2));
        CHECK(d.strong == doctest::Approx(std::exp(-0.5 * std::pow(4.0, 2.7))));
        CHECK(d.block == doctest::Approx(std::exp(-std::pow(4.0, 0.7))));
        CHECK(d.strong_conditional);
        CHECK(std::pow(d.crossing, 1.5) == doctest::Approx(0.5 * std::pow(d.crossing, 2.7)));
        for (double s : {d.crossing * 1.01, d.crossing * 2, d.crossing * 5}) {
            const auto e = deviation_bound_curves(s, 1.0, 0.3, 1.0, BoundConstants{});
            CHECK(e.strong < e.weak);
        }
        CHECK_THROWS_AS(deviation_bound_curves(4.0, 1.0, 0.5, 1.0, BoundConstants{}), InvalidArgument);
        CHECK_THROWS_AS(deviation_bound_curves(4.0, -1.0, 0.3, 1.0, BoundConstants{}), InvalidArgument);
    }

    TEST_CASE("C_eps envelope") {
        const BoundConstants c;
        CHECK(c_eps_envelope(1.0, 0.1, c) == doctest::Approx(std::exp(-1.0)));
        CHECK(c_eps_envelope(3.0, 0.1, c) < c_eps_envelope(2.0, 0.1, c));
        BoundConstants big;
        big.kappa = 10.0;
        CHECK(c_eps_envelope(1e-6, 0.1, big) == 1.0);
    }
}
