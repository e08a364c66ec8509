#include "kpze/verify.hpp"

#include "kpze/airy_spectrum.hpp"
#include "kpze/error.hpp"
#include "kpze/fredholm.hpp"
#include "kpze/painleve.hpp"
#include "kpze/pointstats.hpp"
#include "kpze/rng.hpp"
#include "kpze/specfun.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <numbers>

namespace kpze::verify {
namespace {

using ensembles::EnsembleSample;
using pointstats::Interval;
using pointstats::McEstimate;

std::string fmt(const char* pattern, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

std::string fmt(const char* pattern, double a, double b) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

CheckRow row(std::string id, std::string anchor, double expected, double observed, double tolerance,
             bool ok) {
    CheckRow r;
    r.check_id = std::move(id);
    r.anchor = std::move(anchor);
    r.expected = expected;
    r.observed = observed;
    r.tolerance = tolerance;
    r.pass = ok && std::isfinite(observed);
    r.status = r.pass ? Status::pass : Status::fail;
    return r;
}

CheckRow near(std::string id, std::string anchor, double expected, double observed, double tolerance) {
    return row(std::move(id), std::move(anchor), expected, observed, tolerance,
               std::fabs(observed - expected) <= tolerance);
}

CheckRow statistical(CheckRow r, bool low_power) {
    if (low_power) r.status = Status::low_power;
    return r;
}

bool underpowered(const EnsembleSample& s) {
    return static_cast<std::int64_t>(s.configs.size()) < kMinReplicates;
}

// \int_a^b ai on panels of width <= 0.5, without adaptivity beyond depth 3,
// so that a corrupted integrand cannot stall the check.
double panel_integral(const AiryFn& ai, double a, double b) {
    double total = 0.0;
    for (double lo = a; lo < b; lo += 0.5) {
        const double hi = std::min(lo + 0.5, b);
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(ai, lo, hi, 3, 1e-14);
    }
    return total;
}

template <class F>
double guarded(F&& f) {
    try {
        return f();
    } catch (const std::exception&) {
        return NAN;
    }
}

}  // namespace

std::string to_string(Suite s) { return s == Suite::fast ? "fast" : "full"; }

Suite parse_suite(const std::string& name) {
    if (name == "fast") return Suite::fast;
    if (name == "full") return Suite::full;
    throw InvalidArgument("unknown verify suite '" + name + "' (expected fast or full)");
}

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::low_power: return "low_power";
        case Status::calibration_violation: return "calibration_violation";
    }
    return "unknown";
}

std::vector<CheckRow> check_airy_identities(const AiryFn& ai) {
    const char* anchor = "integral of Ai over the real line equals 1";
    double total, lower, upper, ai0;
    if (ai) {
        const double left = specfun::airy_cdf_left_expansion(specfun::kCdfAnchor);
        const double right = specfun::airy_tail(12.0);
        lower = left + guarded([&] { return panel_integral(ai, specfun::kCdfAnchor, 0.0); });
        upper = guarded([&] { return panel_integral(ai, 0.0, 12.0); }) + right;
        total = lower + upper;
        ai0 = guarded([&] { return ai(0.0); });
    } else {
        total = specfun::airy_cdf(INFINITY);
        lower = specfun::airy_cdf(0.0);
        upper = specfun::airy_tail(0.0);
        ai0 = specfun::airy_ai(0.0);
    }
    return {
        near("airy_integral_total", anchor, 1.0, total, 1e-8),
        near("airy_cdf_zero", "integral of Ai over (-inf, 0) equals 2/3", 2.0 / 3.0, lower, 1e-8),
        near("airy_tail_zero", "integral of Ai over (0, inf) equals 1/3", 1.0 / 3.0, upper, 1e-8),
        near("airy_ai_zero", "Ai(0) = 3^{-2/3} / Gamma(2/3)", 0.35502805388781723926, ai0, 1e-10),
    };
}

std::vector<CheckRow> check_spectrum() {
    std::vector<CheckRow> rows;
    const double lambda1 = guarded([] { return spectrum::airy_zero_magnitude(1); });
    rows.push_back(near("spectrum_lambda1", "lambda_1 is the first Airy zero magnitude", 2.3381074104597670,
                        lambda1, 1e-6));
    double worst = 0.0;
    try {
        const auto exact = spectrum::airy_eigs(200, spectrum::SpectrumMethod::airy_zero);
        const auto approx = spectrum::airy_eigs(200, spectrum::SpectrumMethod::mt59_approx);
        for (std::size_t k = 1; k <= 200; ++k) {
            worst = std::max(worst, static_cast<double>(k) * std::fabs(exact[k] - approx[k]));
        }
    } catch (const std::exception&) {
        worst = NAN;
    }
    rows.push_back(row("spectrum_mt59_remainder", "eigenvalue approximation remainder |R(n)| <= K/n", 0.0,
                       worst, kSpectrumK, worst <= kSpectrumK));
    return rows;
}

std::vector<CheckRow> check_counting() {
    std::vector<CheckRow> rows;
    double worst = 0.0;
    for (double T = 3.0; T <= 50.0 + 1e-12; T += 0.25) {
        const double dev = static_cast<double>(spectrum::count_eigs_below(T)) -
                           2.0 / (3.0 * std::numbers::pi) * std::pow(T, 1.5);
        worst = std::max(worst, std::fabs(dev));
    }
    rows.push_back(row("counting_eigs_below", "k(T) is the closest integer to (2/(3 pi)) T^{3/2}", 0.0, worst,
                       1.0, worst < 1.0));
    double dworst = guarded([] {
        double w = 0.0;
        for (double s = 1.0; s <= 12.0 + 1e-12; s += 0.5) {
            w = std::max(w, std::fabs(pointstats::mean_count(s) -
                                      2.0 / (3.0 * std::numbers::pi) * std::pow(s, 1.5)));
        }
        return w;
    });
    rows.push_back(row("counting_mean_count", "sup_s |E count[-s, inf) - (2/(3 pi)) s^{3/2}| is finite", 0.0,
                       dworst, 1.0, dworst <= 1.0));
    const double rho = guarded([] { return pointstats::rho1_goe(-9.0); });
    rows.push_back(near("counting_rho1_bulk", "rho_1(x) ~ sqrt(-x) / pi as x -> -inf", 3.0 / std::numbers::pi,
                        rho, 0.02 * 3.0 / std::numbers::pi));
    return rows;
}

std::vector<CheckRow> check_painleve_fredholm() {
    std::vector<CheckRow> rows;
    for (double s : {-8.0, -4.0, -2.0, 0.0, 2.0}) {
        for (double v : {0.288, 1.0, 3.0}) {
            const double f2 = guarded([&] { return painleve::f2_analytic(s, v); });
            const double det =
                guarded([&] { return fredholm::fredholm_det_airy(s, -std::expm1(-v), 80); });
            rows.push_back(near(fmt("painleve_fredholm_s%g_v%g", s, v),
                                "thinned Airy gap probability: Painleve II formula equals det(I - gamma K_Ai)",
                                det, f2, 1e-4));
        }
    }
    return rows;
}

std::vector<CheckRow> check_bound_curves() {
    std::vector<CheckRow> rows;
    rows.push_back(near("bounds_f1_curve_s1", "F_1 envelope exp(-(1/(3 pi)) s^{3-delta})",
                        std::exp(-1.0 / (3.0 * std::numbers::pi)), bounds::f1_bound_curve(1.0, 0.1), 1e-12));
    const auto curves = bounds::deviation_bound_curves(4.0, 1.0, 0.3, 1.0, bounds::BoundConstants::defaults());
    rows.push_back(near("bounds_weak_deviation_s4", "weak lower-deviation envelope exp(-eta s^{3/2})",
                        std::exp(-8.0), curves.weak, 1e-15));
    double worst = -INFINITY;
    const auto c = bounds::BoundConstants{.S0 = 1.0};
    for (double s : {1.0, 2.0, 5.0, 10.0, 50.0}) {
        for (double T : {1.0, 8.0, 1e3, 1e6}) {
            const auto b = bounds::kpz_tail_bounds(s, T, 0.1, 0.1, c);
            worst = std::max(worst, b.lower() - b.upper());
        }
    }
    rows.push_back(row("bounds_lower_le_upper", "lower tail bound does not exceed the upper tail bound", 0.0,
                       worst, 0.0, worst <= 0.0));
    return rows;
}

std::vector<CheckRow> check_crossover() {
    std::vector<CheckRow> rows;
    for (double T : {8.0, 27.0}) {
        // Regime must move goe -> crossover -> deep as s grows, flipping around T^{2/3}.
        const double scale = std::pow(T, 2.0 / 3.0);
        int flips = 0;
        bool ordered = true;
        auto prev = bounds::Regime::goe_regime;
        auto rank = [](bounds::Regime r) {
            return r == bounds::Regime::goe_regime ? 0 : r == bounds::Regime::crossover ? 1 : 2;
        };
        for (double f = 0.1; f <= 10.0 + 1e-12; f *= 1.25) {
            const auto r = bounds::classify_regime(f * scale, T);
            if (rank(r) < rank(prev)) ordered = false;
            if (r != prev) ++flips;
            prev = r;
        }
        const bool ok = ordered && flips == 2 &&
                        bounds::classify_regime(scale / 4.0, T) == bounds::Regime::goe_regime &&
                        bounds::classify_regime(4.0 * scale, T) == bounds::Regime::deep_tail;
        rows.push_back(row(fmt("crossover_classifier_T%g", T),
                           "crossover from the 5/2 to the cubic exponent at s ~ T^{2/3}", 1.0, ok ? 1.0 : 0.0,
                           0.0, ok));
    }
    const auto c = bounds::BoundConstants{.S0 = 1.0};
    const auto deep = bounds::kpz_tail_bounds(100.0, 1.0, 0.1, 0.1, c);
    rows.push_back(row("crossover_deep_dominant", "deep tail: the s^{5/2} term dominates", 1.0,
                       deep.dominant_upper == "upper_five_halves" ? 1.0 : 0.0, 0.0,
                       deep.dominant_upper == "upper_five_halves"));
    const auto goe = bounds::kpz_tail_bounds(5.0, 1e6, 0.1, 0.1, c);
    rows.push_back(row("crossover_goe_dominant", "GOE regime: the cubic term dominates", 1.0,
                       goe.dominant_lower == "lower_cubic" ? 1.0 : 0.0, 0.0, goe.dominant_lower == "lower_cubic"));
    return rows;
}

std::vector<CheckRow> check_f1_identity(const EnsembleSample& edge) {
    std::vector<CheckRow> rows;
    const bool low = underpowered(edge);
    const char* anchor = "E exp(-v count[s, inf)) = P(thinned max < s) = F_1(s, v)";
    for (auto [s, v] : {std::pair{-1.0, 1.0}, std::pair{0.0, 0.5}, std::pair{-2.0, 2.0}}) {
        const auto p = pointstats::compare_cgf_thinned(edge, s, v, edge.seed);
        const double f1 = guarded([&] { return painleve::f1_analytic(s, v); });
        const std::string tag = fmt("s%g_v%g", s, v);
        rows.push_back(statistical(near("f1_paired_difference_" + tag, anchor, 0.0, p.difference.value,
                                        kStdErrors * p.difference.std_error),
                                   low));
        rows.push_back(statistical(
            near("f1_cgf_vs_painleve_" + tag, anchor, f1, p.cgf.value, kStdErrors * p.cgf.std_error), low));
        rows.push_back(statistical(near("f1_thinned_vs_painleve_" + tag, anchor, f1, p.thinned.value,
                                        kStdErrors * p.thinned.std_error),
                                   low));
    }
    return rows;
}

std::vector<CheckRow> check_mean_count(const EnsembleSample& edge) {
    std::vector<CheckRow> rows;
    const bool low = underpowered(edge);
    for (double s : {2.0, 4.0, 6.0}) {
        std::vector<double> counts;
        counts.reserve(edge.configs.size());
        for (const auto& c : edge.configs) {
            counts.push_back(static_cast<double>(pointstats::count_in(c, Interval::ray(s))));
        }
        const McEstimate e = pointstats::summarize(counts);
        rows.push_back(statistical(near(fmt("mean_count_mc_s%g", s),
                                        "E count[-s, inf) is the integral of the GOE one-point density",
                                        pointstats::mean_count(s), e.value, kStdErrors * e.std_error),
                                   low));
    }
    return rows;
}

std::vector<CheckRow> check_tw_tail(const EnsembleSample& tail) {
    std::vector<CheckRow> rows;
    const bool low = underpowered(tail);
    const char* anchor = "GOE Tracy-Widom lower tail exp(-(1/24) s^3 (1 + o(1)))";
    const McEstimate p0 = pointstats::tail_prob_max(tail, 0.0);
    const double tw0 = guarded([] { return painleve::f1_analytic(0.0, 15.0); });
    rows.push_back(statistical(near("tw_tail_s0", "P(a_1 < 0) from the Painleve II representation", tw0,
                                    p0.value, kStdErrors * p0.std_error),
                               low));
    const McEstimate p4 = pointstats::tail_prob_max(tail, 4.0);
    const McEstimate p5 = pointstats::tail_prob_max(tail, 5.0);
    const double target = std::exp(-64.0 / 24.0);
    const double ratio4 = p4.value / target;
    rows.push_back(statistical(row("tw_tail_s4_factor", anchor, target, p4.value, 2.0,
                                   ratio4 >= 0.5 && ratio4 <= 2.0),
                               low || p4.low_power));
    const double cubic = 125.0 / 64.0;
    const double ratio = std::log(p5.value) / std::log(p4.value);
    rows.push_back(statistical(row("tw_tail_cubic_ratio", anchor, cubic, ratio, 0.4 * cubic,
                                   ratio >= 0.6 * cubic && ratio <= 1.4 * cubic),
                               low || p4.low_power || p5.low_power));
    return rows;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("ks_distance: samples must be nonempty");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
    }
    return d;
}

std::vector<CheckRow> check_sampler_equivalence(const EnsembleSample& edge, const EnsembleSample& sao) {
    std::vector<double> a, b;
    for (const auto& c : edge.configs) a.push_back(c.points.front());
    for (const auto& c : sao.configs) b.push_back(c.points.front());
    const double d = ks_distance(a, b);
    return {statistical(row("sampler_ks_largest", "tridiagonal and stochastic Airy samplers agree in law", 0.0,
                            d, 0.03, d <= 0.03),
                        underpowered(edge) || underpowered(sao))};
}

std::vector<CheckRow> check_deviations(const EnsembleSample& edge, const bounds::BoundConstants& constants) {
    std::vector<CheckRow> rows;
    const bool low = underpowered(edge);
    const std::array<double, 3> grid{3.0, 4.0, 5.0};
    for (int side = 0; side < 2; ++side) {
        const bool lower = side == 0;
        const char* anchor = lower ? "lower deviation of count[-s, inf) <= exp(-eta s^{3/2})"
                                   : "upper deviation of count[-2l, -l) <= exp(-C l^{1-delta})";
        const char* name = lower ? "deviation_lower_ray" : "deviation_upper_block";
        std::vector<double> probs;
        bool thin_power = low;
        for (double x : grid) {
            const auto interval = lower ? Interval::ray(x) : Interval::block(2, x);
            const McEstimate p = pointstats::deviation_prob(edge, interval, kDeviationC,
                                                            lower ? pointstats::Side::lower : pointstats::Side::upper);
            const auto curves = bounds::deviation_bound_curves(x, kDeviationC, kDeviationDelta, constants.eta, constants);
            const double envelope = lower ? curves.weak : curves.block;
            probs.push_back(p.value);
            rows.push_back(statistical(row(std::string(name) + fmt("_%g", x), anchor, envelope, p.value,
                                           0.0, p.value <= envelope),
                                       low));
        }
        thin_power = thin_power || probs.front() * static_cast<double>(edge.configs.size()) < pointstats::kMinHits;
        double rise = 0.0;
        for (std::size_t i = 1; i < probs.size(); ++i) rise = std::max(rise, probs[i] - probs[i - 1]);
        rows.push_back(statistical(
            row(std::string(name) + "_monotone", anchor, 0.0, rise, 0.0, rise <= 0.0 && probs.back() < probs.front()),
            thin_power));
    }
    return rows;
}

std::vector<CheckRow> check_laplace_bracket(const EnsembleSample& edge, const bounds::BoundConstants& constants) {
    std::vector<CheckRow> rows;
    const bool low = underpowered(edge);
    for (double s : {2.0, 3.0}) {
        for (double T : {8.0, 27.0}) {
            const McEstimate e = pointstats::laplace_functional(edge, s, T);
            const auto b = bounds::kpz_tail_bounds(s, T, kLaplaceEps, kLaplaceDelta, constants);
            const std::string tag = fmt("s%g_T%g", s, T);
            CheckRow lo = statistical(row("laplace_lower_" + tag,
                                          "lower bound exp(-2(1+C eps)/(15 pi) T^{1/3} s^{5/2}) + exp(-K2 s^3)",
                                          b.lower(), e.value, 0.0, e.value >= b.lower()),
                                      low);
            CheckRow hi = statistical(
                row("laplace_upper_" + tag,
                    "upper bound exp(-2(1-C eps)/(15 pi) T^{1/3} s^{5/2}) + exp(-(eps/2) s T^{1/3} - eta s^{3/2}) "
                    "+ exp(-(1-C eps)/24 s^3)",
                    b.upper(), e.value, 0.0, e.value <= b.upper()),
                low);
            for (CheckRow* r : {&lo, &hi}) {
                if (r->status == Status::fail) r->status = Status::calibration_violation;
                rows.push_back(*r);
            }
        }
    }
    return rows;
}

std::vector<CheckRow> check_c_eps(const EnsembleSample& edge) {
    std::vector<CheckRow> rows;
    const bool low = underpowered(edge);
    const auto spectrum = spectrum::airy_eigs(edge.k, spectrum::SpectrumMethod::airy_zero);
    std::vector<double> values;
    for (const auto& c : edge.configs) values.push_back(pointstats::c_eps(c, 0.3, spectrum));
    std::vector<double> tail;
    for (double th : {1.0, 2.0, 3.0}) {
        const double n = static_cast<double>(std::count_if(values.begin(), values.end(),
                                                           [&](double x) { return x >= th; }));
        tail.push_back(n / static_cast<double>(values.size()));
    }
    const bool decreasing = tail[0] >= tail[1] && tail[1] >= tail[2];
    rows.push_back(statistical(row("c_eps_tail_decreasing", "tail of C_eps decays like kappa exp(-kappa s^{1-delta})",
                                   0.0, tail[2] - tail[0], 0.0, decreasing),
                               low));
    rows.push_back(statistical(row("c_eps_tail_at_3", "tail of C_eps decays like kappa exp(-kappa s^{1-delta})",
                                   0.05, tail[2], 0.0, tail[2] < 0.05),
                               low));
    return rows;
}

CampaignSizes CampaignSizes::scaled(std::int64_t r) {
    if (r < 2) throw InvalidArgument("replicates must be at least 2");
    return {r, 10 * r, r};
}

std::uint64_t campaign_seed(std::uint64_t seed, const char* member) { return rng::stream_seed(seed, 0, member); }

Campaign run_campaign(std::uint64_t seed, const CampaignSizes& sizes, unsigned threads) {
    Campaign c;
    c.edge = ensembles::sample_tridiag_edge(2000, 40, sizes.edge_replicates, campaign_seed(seed, "edge"), threads);
    c.tail = ensembles::sample_tridiag_edge(500, 1, sizes.tail_replicates, campaign_seed(seed, "tail"), threads);
    c.sao = ensembles::sample_sao_eigs({}, 1, sizes.sao_replicates, campaign_seed(seed, "sao"), threads);
    return c;
}

std::size_t VerifyReport::count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const CheckRow& r) { return r.status == s; }));
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = to_string(suite);
    j["seed"] = seed;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json c;
        c["check_id"] = r.check_id;
        c["anchor"] = r.anchor;
        c["expected"] = r.expected;
        c["observed"] = std::isfinite(r.observed) ? nlohmann::ordered_json(r.observed) : nlohmann::ordered_json();
        c["tolerance"] = r.tolerance;
        c["pass"] = r.pass;
        c["status"] = to_string(r.status);
        checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    j["summary"] = {{"pass", count(Status::pass)},
                    {"fail", count(Status::fail)},
                    {"low_power", count(Status::low_power)},
                    {"calibration_violation", count(Status::calibration_violation)}};
    return j.dump(2) + "\n";
}

VerifyReport run_verify(const VerifyOptions& options) {
    VerifyReport report;
    report.suite = options.suite;
    report.seed = options.seed;
    auto add = [&](std::vector<CheckRow> rows) {
        for (auto& r : rows) report.rows.push_back(std::move(r));
    };
    add(check_airy_identities(options.airy_ai));
    add(check_spectrum());
    add(check_counting());
    add(check_painleve_fredholm());
    add(check_bound_curves());
    add(check_crossover());
    if (options.suite == Suite::full) {
        const CampaignSizes sizes =
            options.replicates > 0 ? CampaignSizes::scaled(options.replicates) : CampaignSizes{};
        const Campaign c = run_campaign(options.seed, sizes, options.threads);
        add(check_f1_identity(c.edge));
        add(check_mean_count(c.edge));
        add(check_tw_tail(c.tail));
        add(check_sampler_equivalence(c.edge, c.sao));
        add(check_deviations(c.edge, options.constants));
        add(check_laplace_bracket(c.edge, options.constants));
        add(check_c_eps(c.edge));
    }
    return report;
}

}  // namespace kpze::verify
