#include "kpze/pointstats.hpp"

#include "kpze/error.hpp"
#include "kpze/fredholm.hpp"
#include "kpze/quadrature.hpp"
#include "kpze/rng.hpp"
#include "kpze/specfun.hpp"

#include <cmath>
#include <string>

namespace kpze::pointstats {
namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

double deepest(const PointConfiguration& c) { return c.points.back(); }

void require_depth(const PointConfiguration& c, double needed, const char* who) {
    if (!c.points.empty() && !(deepest(c) < needed)) {
        throw TruncationError(std::string(who) + ": configuration reaches only " +
                                  std::to_string(deepest(c)) + ", needs a point below " +
                                  std::to_string(needed),
                              needed);
    }
}

constexpr double kTailStart = 6.0;

}  // namespace

Interval Interval::ray(double s) {
    if (!std::isfinite(s)) throw InvalidArgument("Interval::ray: s must be finite");
    return {Kind::ray, s, 1};
}

Interval Interval::block(std::int64_t k, double l) {
    if (k < 1) throw InvalidArgument("Interval::block: k must be >= 1");
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("Interval::block: l must be positive");
    return {k == 1 ? Kind::ray : Kind::block, l, k};
}

double Interval::lower() const { return kind == Kind::ray ? -s_or_l : -static_cast<double>(k) * s_or_l; }

double Interval::upper() const {
    return kind == Kind::ray ? INFINITY : -static_cast<double>(k - 1) * s_or_l;
}

McEstimate summarize(std::span<const double> values) {
    McEstimate e;
    e.replicates = static_cast<std::int64_t>(values.size());
    if (values.empty()) return e;
    CompensatedSum sum;
    for (double x : values) sum.add(x);
    const double mean = sum.value() / values.size();
    CompensatedSum sq;
    for (double x : values) sq.add((x - mean) * (x - mean));
    e.value = mean;
    e.std_error = values.size() > 1 ? std::sqrt(sq.value() / (values.size() - 1) / values.size()) : 0.0;
    return e;
}

std::size_t count_at_or_above(const PointConfiguration& config, double threshold) {
    require_depth(config, threshold, "count");
    std::size_t n = 0;
    for (double x : config.points) {
        if (x < threshold) break;
        ++n;
    }
    return n;
}

std::size_t count_in(const PointConfiguration& config, const Interval& interval) {
    const double lo = interval.lower();
    const double hi = interval.upper();
    require_depth(config, lo, "count_in");
    std::size_t n = 0;
    for (double x : config.points) {
        if (x >= lo && x < hi) ++n;
    }
    return n;
}

double rho1_gue(double x) { return fredholm::airy_kernel(x, x); }

double rho1_goe(double x) { return rho1_gue(x) + 0.5 * specfun::airy_ai(x) * specfun::airy_cdf(x); }

double mean_count(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("mean_count: s must be positive");
    // \int_X^inf K(t,t) = (2X^2 Ai^2 - 2X Ai'^2 - Ai Ai')/3, \int_X^inf Ai F = (1 - F(X)^2)/2.
    const specfun::AiryValue a = specfun::airy(kTailStart);
    const double x = kTailStart;
    const double gue_tail = (2.0 * x * x * a.ai * a.ai - 2.0 * x * a.ai_prime * a.ai_prime - a.ai * a.ai_prime) / 3.0;
    const double cdf = specfun::airy_cdf(kTailStart);
    const double goe_tail = gue_tail + 0.25 * (1.0 - cdf * cdf);
    // Unit panels keep the oscillatory part well resolved.
    double total = 0.0;
    double lo = -s;
    while (lo < kTailStart) {
        const double hi = std::min(std::floor(lo) + 1.0, kTailStart);
        total += quad::integrate(rho1_goe, lo, hi, 1e-10, 1e-12).value;
        lo = hi;
    }
    return total + goe_tail;
}

double mean_count(const Interval& interval) {
    if (interval.kind == Interval::Kind::ray) return mean_count(interval.s_or_l);
    return mean_count(-interval.lower()) - mean_count(-interval.upper());
}

double empirical_mean_count(const EnsembleSample& sample, const Interval& interval) {
    CompensatedSum sum;
    for (const auto& c : sample.configs) sum.add(static_cast<double>(count_in(c, interval)));
    return sum.value() / static_cast<double>(sample.configs.size());
}

McEstimate empirical_cgf(const EnsembleSample& sample, double s, double v) {
    if (!(v >= 0.0)) throw InvalidArgument("empirical_cgf: v must be >= 0");
    std::vector<double> values(sample.configs.size());
    for (std::size_t r = 0; r < values.size(); ++r) {
        const auto n = count_at_or_above(sample.configs[r], s);
        values[r] = v == 0.0 ? 1.0 : std::exp(-v * static_cast<double>(n));
    }
    return summarize(values);
}

namespace {

bool thinned_max_below(const PointConfiguration& c, double s, double gamma, std::uint64_t seed,
                       std::size_t r) {
    require_depth(c, s, "thinned_max_cdf");
    PointConfiguration above;
    for (double x : c.points) {
        if (x < s) break;
        above.points.push_back(x);
    }
    above.k_kept = above.points.size();
    const PointConfiguration kept = ensembles::thin(above, gamma, rng::stream_seed(seed, r, "thin"));
    return kept.points.empty();
}

}  // namespace

McEstimate thinned_max_cdf(const EnsembleSample& sample, double s, double gamma, std::uint64_t seed) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("thinned_max_cdf: gamma must lie in [0, 1]");
    std::vector<double> values(sample.configs.size());
    std::int64_t hits = 0;
    for (std::size_t r = 0; r < values.size(); ++r) {
        values[r] = thinned_max_below(sample.configs[r], s, gamma, seed, r) ? 1.0 : 0.0;
        hits += values[r] > 0.0;
    }
    McEstimate e = summarize(values);
    e.hits = hits;
    return e;
}

PairedComparison compare_cgf_thinned(const EnsembleSample& sample, double s, double v,
                                     std::uint64_t seed) {
    if (!(v >= 0.0)) throw InvalidArgument("compare_cgf_thinned: v must be >= 0");
    const double gamma = -std::expm1(-v);
    const std::size_t n = sample.configs.size();
    std::vector<double> cgf(n), ind(n), diff(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto count = count_at_or_above(sample.configs[r], s);
        cgf[r] = std::exp(-v * static_cast<double>(count));
        ind[r] = thinned_max_below(sample.configs[r], s, gamma, seed, r) ? 1.0 : 0.0;
        diff[r] = ind[r] - cgf[r];
    }
    return {summarize(cgf), summarize(ind), summarize(diff)};
}

double c_eps(const PointConfiguration& config, double eps, const spectrum::SpectrumTable& spectrum) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidArgument("c_eps: eps must lie in (0, 1)");
    if (spectrum.eigenvalues.size() < config.points.size()) {
        throw InvalidArgument("c_eps: spectrum table shorter than the configuration");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < config.points.size(); ++k) {
        const double minus_a = -config.points[k];
        const double lambda = spectrum.eigenvalues[k];
        worst = std::max({worst, (1.0 - eps) * lambda - minus_a, minus_a - (1.0 + eps) * lambda});
    }
    return worst;
}

double laplace_j(double x, double s, double T) {
    const double arg = std::cbrt(T) * (x + s);
    if (arg > 30.0) return 0.5 * (arg + std::log1p(std::exp(-arg)));
    return 0.5 * std::log1p(std::exp(arg));
}

McEstimate laplace_functional(const EnsembleSample& sample, double s, double T, DepthPolicy policy) {
    if (!(s > 0.0)) throw InvalidArgument("laplace_functional: s must be positive");
    if (!(T > 0.0)) throw InvalidArgument("laplace_functional: T must be positive");
    const double needed = -s - 40.0 / std::cbrt(T);
    std::vector<double> values(sample.configs.size());
    for (std::size_t r = 0; r < values.size(); ++r) {
        const auto& c = sample.configs[r];
        if (policy == DepthPolicy::enforce && !c.points.empty() && deepest(c) > needed) {
            throw TruncationError("laplace_functional: configuration reaches only " +
                                      std::to_string(deepest(c)) + ", needs " + std::to_string(needed),
                                  needed);
        }
        CompensatedSum j;
        for (double x : c.points) j.add(laplace_j(x, s, T));
        values[r] = std::exp(-j.value());
    }
    return summarize(values);
}

McEstimate tail_prob_max(const EnsembleSample& sample, double s) {
    std::vector<double> values(sample.configs.size());
    std::int64_t hits = 0;
    for (std::size_t r = 0; r < values.size(); ++r) {
        const auto& c = sample.configs[r];
        values[r] = (!c.points.empty() && c.points.front() < -s) ? 1.0 : 0.0;
        hits += values[r] > 0.0;
    }
    McEstimate e = summarize(values);
    e.hits = hits;
    e.low_power = hits < kMinHits;
    return e;
}

McEstimate deviation_prob(const EnsembleSample& sample, const Interval& interval, double c, Side side) {
    if (!(c > 0.0)) throw InvalidArgument("deviation_prob: c must be positive");
    const double mean = mean_count(interval);
    const double size = c * std::pow(interval.scale(), 1.5);
    std::vector<double> values(sample.configs.size());
    std::int64_t hits = 0;
    for (std::size_t r = 0; r < values.size(); ++r) {
        const double dev = static_cast<double>(count_in(sample.configs[r], interval)) - mean;
        const bool hit = side == Side::lower ? dev <= -size : dev >= size;
        values[r] = hit ? 1.0 : 0.0;
        hits += hit;
    }
    McEstimate e = summarize(values);
    e.hits = hits;
    e.low_power = hits < kMinHits;
    return e;
}

}  // namespace kpze::pointstats
