#pragma once

// Statistics of sampled GOE edge configurations and the one-point density
// they are checked against.

#include "kpze/airy_spectrum.hpp"
#include "kpze/ensembles.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace kpze::pointstats {

using ensembles::EnsembleSample;
using ensembles::PointConfiguration;

/// ray: [-s, inf). block (k >= 2): [-k l, -(k-1) l); block k = 1 is the ray [-l, inf).
struct Interval {
    enum class Kind { ray, block };
    Kind kind = Kind::ray;
    double s_or_l = 0.0;
    std::int64_t k = 1;

    static Interval ray(double s);
    static Interval block(std::int64_t k, double l);

    double lower() const;
    double upper() const;  // +inf for rays
    /// Scale entering the c s^{3/2} (ray) or c l^{3/2} (block) deviation size.
    double scale() const { return s_or_l; }
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t replicates = 0;
    bool low_power = false;
    std::int64_t hits = -1;  // event count for indicator estimates, -1 otherwise
};

/// Mean and standard error sd / sqrt(R) of per-replicate values.
McEstimate summarize(std::span<const double> values);

/// Minimum number of hits below which an indicator estimate is low-power.
inline constexpr std::int64_t kMinHits = 20;

/// #{points >= threshold}; requires the configuration to reach below threshold.
std::size_t count_at_or_above(const PointConfiguration& config, double threshold);
std::size_t count_in(const PointConfiguration& config, const Interval& interval);

double rho1_gue(double x);
double rho1_goe(double x);

/// \int_{-s}^inf rho1_goe by adaptive quadrature on (-s, 6) plus the closed-form
/// tail beyond 6.
double mean_count(double s);
double mean_count(const Interval& interval);

double empirical_mean_count(const EnsembleSample& sample, const Interval& interval);

/// E exp(-v #{a_k >= s}).
McEstimate empirical_cgf(const EnsembleSample& sample, double s, double v);

/// P(largest gamma-thinned point < s); replicate r is thinned with stream
/// (seed, r, "thin").
McEstimate thinned_max_cdf(const EnsembleSample& sample, double s, double gamma, std::uint64_t seed);

struct PairedComparison {
    McEstimate cgf;
    McEstimate thinned;
    McEstimate difference;  // per-replicate thinned indicator minus exp(-v N)
};

PairedComparison compare_cgf_thinned(const EnsembleSample& sample, double s, double v,
                                     std::uint64_t seed);

/// Realised C_eps on a truncated configuration.
double c_eps(const PointConfiguration& config, double eps, const spectrum::SpectrumTable& spectrum);

enum class DepthPolicy { enforce, truncate };

/// J_s(x) = (1/2) log(1 + exp(T^{1/3} (x + s))).
double laplace_j(double x, double s, double T);

/// E exp(-sum_k J_s(a_k)). Under DepthPolicy::enforce every configuration must
/// reach -s - 40 T^{-1/3}.
McEstimate laplace_functional(const EnsembleSample& sample, double s, double T,
                              DepthPolicy policy = DepthPolicy::enforce);

/// P(a_1 < -s).
McEstimate tail_prob_max(const EnsembleSample& sample, double s);

enum class Side { lower, upper };

/// P(count - mean <= -c x^{3/2}) (lower) or P(count - mean >= c x^{3/2})
/// (upper), x = s for rays and l for blocks, mean from mean_count.
McEstimate deviation_prob(const EnsembleSample& sample, const Interval& interval, double c, Side side);

}  // namespace kpze::pointstats
