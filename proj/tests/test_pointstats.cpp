#include "kpze/airy_spectrum.hpp"
#include "kpze/error.hpp"
#include "kpze/painleve.hpp"
#include "kpze/pointstats.hpp"
#include "kpze/specfun.hpp"

#include <cmath>
#include <doctest.h>
#include <numbers>

using namespace kpze;
using namespace kpze::pointstats;
using ensembles::PointConfiguration;

namespace {

ensembles::EnsembleSample synthetic_sample(std::vector<std::vector<double>> rows) {
    ensembles::EnsembleSample s;
    for (auto& r : rows) s.configs.push_back(PointConfiguration::synthetic(std::move(r)));
    s.replicate_count = static_cast<std::int64_t>(s.configs.size());
    s.k = s.configs.empty() ? 0 : static_cast<std::int64_t>(s.configs[0].points.size());
    return s;
}

// Independent closed form: \int_X^inf K(t,t) dt + (1/2)\int_X^inf Ai F dt.
double mean_count_closed(double s) {
    const double x = -s;
    const double ai = specfun::airy_ai(x);
    const double aip = specfun::airy_ai_prime(x);
    const double f = specfun::airy_cdf(x);
    return (2.0 * x * x * ai * ai - 2.0 * x * aip * aip - ai * aip) / 3.0 + 0.25 * (1.0 - f * f);
}

}  // namespace

TEST_SUITE("pointstats") {
    TEST_CASE("intervals") {
        const auto r = Interval::ray(4.0);
        CHECK(r.lower() == -4.0);
        CHECK(std::isinf(r.upper()));
        const auto b = Interval::block(3, 2.0);
        CHECK(b.lower() == -6.0);
        CHECK(b.upper() == -4.0);
        CHECK(Interval::block(1, 2.0).kind == Interval::Kind::ray);
        CHECK_THROWS_AS(Interval::block(0, 1.0), InvalidArgument);
        CHECK_THROWS_AS(Interval::block(2, -1.0), InvalidArgument);
    }

    TEST_CASE("counting examples") {
        const auto empty = PointConfiguration::synthetic({});
        CHECK(count_in(empty, Interval::ray(3.0)) == 0);
        CHECK(count_in(empty, Interval::block(2, 1.0)) == 0);
        const auto c = PointConfiguration::synthetic({-1.0, -3.0, -5.0});
        CHECK(count_in(c, Interval::ray(4.0)) == 2);
        CHECK(count_in(c, Interval::block(2, 2.0)) == 1);
        CHECK(count_at_or_above(c, -3.0) == 2);
        try {
            count_in(c, Interval::ray(6.0));
            FAIL("expected truncation");
        } catch (const TruncationError& e) {
            CHECK(e.required_depth() == -6.0);
        }
    }

    TEST_CASE("count additivity over blocks") {
        const auto c = PointConfiguration::synthetic({1.2, -0.4, -1.0, -2.5, -3.0, -3.9, -4.0, -7.5, -9.0});
        for (double l : {0.5, 1.0, 2.0}) {
            for (std::int64_t k = 1; k <= 4; ++k) {
                std::size_t sum = 0;
                for (std::int64_t j = 1; j <= k; ++j) sum += count_in(c, Interval::block(j, l));
                CHECK(sum == count_in(c, Interval::ray(k * l)));
            }
        }
    }

    TEST_CASE("one-point density") {
        CHECK(rho1_goe(-9.0) == doctest::Approx(3.0 / std::numbers::pi).epsilon(0.02));
        for (double x : {-6.0, -1.0, 0.0, 2.0, 5.0}) {
            CHECK(rho1_goe(x) > 0.0);
            CHECK(rho1_goe(x) > rho1_gue(x));
        }
    }

    TEST_CASE("mean count against the closed form") {
        for (double s : {0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 12.0}) {
            CHECK(std::fabs(mean_count(s) - mean_count_closed(s)) <= 1e-8);
        }
        CHECK(std::fabs(mean_count(4.0) - 16.0 / (3.0 * std::numbers::pi)) <= 1.0);
        CHECK(mean_count(Interval::block(2, 2.0)) == doctest::Approx(mean_count(4.0) - mean_count(2.0)));
        CHECK_THROWS_AS(mean_count(0.0), InvalidArgument);
    }

    TEST_CASE("empirical CGF") {
        const auto s = synthetic_sample({{0.5, -0.2, -2.0}, {-1.5, -2.5, -3.0}, {1.0, 0.1, -4.0}});
        const auto zero = empirical_cgf(s, -1.0, 0.0);
        CHECK(zero.value == 1.0);
        CHECK(zero.std_error == 0.0);
        CHECK(zero.replicates == 3);
        const auto one = empirical_cgf(s, -1.0, 1.0);
        CHECK(one.value == doctest::Approx((std::exp(-2.0) + 1.0 + std::exp(-2.0)) / 3.0));
        double prev = 1.0;
        for (double v : {0.1, 1.0, 5.0, 50.0}) {
            const double val = empirical_cgf(s, -1.0, v).value;
            CHECK(val > 0.0);
            CHECK(val <= prev);
            prev = val;
        }
        // v -> inf tends to P(a_1 < s).
        CHECK(empirical_cgf(s, -1.0, 700.0).value == doctest::Approx(tail_prob_max(s, 1.0).value));
        CHECK_THROWS_AS(empirical_cgf(s, -1.0, -1.0), InvalidArgument);
    }

    TEST_CASE("thinned maximum") {
        const auto s = synthetic_sample({{0.5, -0.2, -2.0}, {-1.5, -2.5, -3.0}, {1.0, 0.1, -4.0}});
        CHECK(thinned_max_cdf(s, -1.0, 0.0, 1).value == 1.0);
        CHECK(thinned_max_cdf(s, -1.0, 1.0, 1).value == doctest::Approx(1.0 / 3.0));
        CHECK(thinned_max_cdf(s, -1.0, 0.5, 1).value == thinned_max_cdf(s, -1.0, 0.5, 1).value);
        // Large s: nothing to keep above it.
        const auto far = synthetic_sample({{0.5, -10.0}, {1.0, -12.0}});
        CHECK(thinned_max_cdf(far, 8.0, 1.0, 1).value == 1.0);
    }

    TEST_CASE("paired identity on a synthetic sample") {
        ensembles::EnsembleSample s;
        for (int r = 0; r < 20'000; ++r) {
            const int n = r % 5;
            std::vector<double> pts;
            for (int i = 0; i < n; ++i) pts.push_back(1.0 - i);
            pts.push_back(-10.0);
            s.configs.push_back(PointConfiguration::synthetic(pts));
        }
        const auto cmp = compare_cgf_thinned(s, -5.0, 1.0, 77);
        CHECK(std::fabs(cmp.difference.value) <= 3.0 * cmp.difference.std_error);
        CHECK(std::fabs(cmp.thinned.value - cmp.cgf.value) <= 3.0 * std::hypot(cmp.thinned.std_error, cmp.cgf.std_error));
    }

    TEST_CASE("C_eps") {
        const auto table = spectrum::airy_eigs(10, spectrum::SpectrumMethod::airy_zero);
        std::vector<double> exact;
        for (std::size_t k = 1; k <= 10; ++k) exact.push_back(-table[k]);
        CHECK(c_eps(PointConfiguration::synthetic(exact), 0.3, table) == 0.0);
        const std::vector<double> shifted{-(1.3 * table[1] + 2.0)};
        CHECK(c_eps(PointConfiguration::synthetic(shifted), 0.3, table) == doctest::Approx(2.0));
        double prev = INFINITY;
        for (double eps : {0.05, 0.1, 0.3, 0.6}) {
            const double v = c_eps(PointConfiguration::synthetic(shifted), eps, table);
            CHECK(v <= prev);
            prev = v;
        }
        const auto small = spectrum::airy_eigs(3, spectrum::SpectrumMethod::airy_zero);
        CHECK_THROWS_AS(c_eps(PointConfiguration::synthetic(exact), 0.3, small), InvalidArgument);
        CHECK_THROWS_AS(c_eps(PointConfiguration::synthetic(exact), 1.0, table), InvalidArgument);
    }

    TEST_CASE("Laplace kernel") {
        CHECK(laplace_j(0.0, 0.0, 1.0) == doctest::Approx(0.5 * std::log(2.0)));
        CHECK(laplace_j(1000.0, 2.0, 27.0) == doctest::Approx(0.5 * 3.0 * 1002.0));
        CHECK(std::isfinite(laplace_j(1e6, 0.0, 1e6)));
        CHECK(laplace_j(-50.0, 2.0, 8.0) < 1e-20);
    }

    TEST_CASE("Laplace functional") {
        const auto s = synthetic_sample({{0.5, -1.0}, {-0.5, -2.0, -3.0}});
        // T -> 0: each point contributes (1/2) log 2.
        const auto limit = laplace_functional(s, 1.0, 1e-15, DepthPolicy::truncate);
        CHECK(limit.value == doctest::Approx((std::pow(2.0, -1.0) + std::pow(2.0, -1.5)) / 2.0).epsilon(1e-4));
        CHECK_THROWS_AS(laplace_functional(s, 1.0, 8.0), TruncationError);
        const auto deep = synthetic_sample({{0.5, -1.0, -40.0}, {-0.5, -2.0, -3.0, -45.0}});
        double prev = 1.0;
        for (double sv : {1.0, 2.0, 3.0}) {
            const auto e = laplace_functional(deep, sv, 10.0);
            CHECK(e.value > 0.0);
            CHECK(e.value < prev);
            prev = e.value;
        }
        CHECK_THROWS_AS(laplace_functional(deep, 0.0, 1.0), InvalidArgument);
    }

    TEST_CASE("tail and deviation probabilities") {
        std::vector<std::vector<double>> rows;
        for (int r = 0; r < 30; ++r) rows.push_back({-4.5, -9.0});
        for (int r = 0; r < 70; ++r) rows.push_back({1.0, -0.5, -1.0, -2.0, -9.0});
        const auto s = synthetic_sample(rows);
        const auto t = tail_prob_max(s, 4.0);
        CHECK(t.value == doctest::Approx(0.3));
        CHECK(t.hits == 30);
        CHECK_FALSE(t.low_power);
        CHECK(tail_prob_max(s, 6.0).low_power);
        CHECK(deviation_prob(s, Interval::ray(4.0), 1e3, Side::lower).hits == 0);
        CHECK(deviation_prob(s, Interval::ray(4.0), 1e3, Side::upper).hits == 0);
        // mean_count(4) ~ 1.94: zero points deviate by -1.94, four by +2.06.
        CHECK(deviation_prob(s, Interval::ray(4.0), 0.5, Side::lower).value <=
              deviation_prob(s, Interval::ray(4.0), 0.2, Side::lower).value);
        CHECK(deviation_prob(s, Interval::ray(4.0), 0.2, Side::lower).value == doctest::Approx(0.3));
        CHECK(deviation_prob(s, Interval::ray(4.0), 0.25, Side::lower).value == 0.0);
        CHECK(deviation_prob(s, Interval::ray(4.0), 0.25, Side::upper).value == doctest::Approx(0.7));
        CHECK_THROWS_AS(deviation_prob(s, Interval::ray(4.0), 0.0, Side::lower), InvalidArgument);
    }

    TEST_CASE("summaries use compensated sums") {
        std::vector<double> v(1'000'001, 0.1);
        v[0] = 1e8;
        const auto e = summarize(v);
        CHECK(e.value == doctest::Approx((1e8 + 1e6 * 0.1) / 1'000'001.0).epsilon(1e-15));
        const std::vector<double> one{2.0};
        CHECK(summarize(one).std_error == 0.0);
    }
}
