#pragma once

// Cross-validation checks and the verify report.

#include "kpze/bounds.hpp"
#include "kpze/ensembles.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kpze::verify {

enum class Suite { fast, full };
std::string to_string(Suite s);
Suite parse_suite(const std::string& name);

enum class Status { pass, fail, low_power, calibration_violation };
std::string to_string(Status s);

struct CheckRow {
    std::string check_id;
    std::string anchor;  // the claim being checked
    double expected = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    Status status = Status::fail;
};

using AiryFn = std::function<double(double)>;

/// Statistical comparisons on fewer replicates than this are reported as
/// low-power instead of failing.
inline constexpr std::int64_t kMinReplicates = 1000;

inline constexpr double kSpectrumK = 0.02;
inline constexpr double kStdErrors = 3.0;
inline constexpr double kDeviationC = 0.25;
inline constexpr double kDeviationDelta = 0.3;
inline constexpr double kLaplaceEps = 0.1;
inline constexpr double kLaplaceDelta = 0.1;

// Analytic checks.
std::vector<CheckRow> check_airy_identities(const AiryFn& ai);
std::vector<CheckRow> check_spectrum();
std::vector<CheckRow> check_counting();
std::vector<CheckRow> check_painleve_fredholm();
std::vector<CheckRow> check_bound_curves();
std::vector<CheckRow> check_crossover();

// Monte Carlo checks. edge: tridiagonal n = 2000, k = 40; tail: n = 500,
// k = 1; sao: stochastic Airy operator, k = 1.
std::vector<CheckRow> check_f1_identity(const ensembles::EnsembleSample& edge);
std::vector<CheckRow> check_mean_count(const ensembles::EnsembleSample& edge);
std::vector<CheckRow> check_tw_tail(const ensembles::EnsembleSample& tail);
std::vector<CheckRow> check_sampler_equivalence(const ensembles::EnsembleSample& edge,
                                                const ensembles::EnsembleSample& sao);
std::vector<CheckRow> check_deviations(const ensembles::EnsembleSample& edge,
                                       const bounds::BoundConstants& constants);
std::vector<CheckRow> check_laplace_bracket(const ensembles::EnsembleSample& edge,
                                            const bounds::BoundConstants& constants);
std::vector<CheckRow> check_c_eps(const ensembles::EnsembleSample& edge);

struct CampaignSizes {
    std::int64_t edge_replicates = 10'000;
    std::int64_t tail_replicates = 100'000;
    std::int64_t sao_replicates = 10'000;

    /// edge and sao get r replicates, tail gets 10 r.
    static CampaignSizes scaled(std::int64_t r);
};

struct Campaign {
    ensembles::EnsembleSample edge;
    ensembles::EnsembleSample tail;
    ensembles::EnsembleSample sao;
};

/// Seeds are derived from the base seed per campaign member.
Campaign run_campaign(std::uint64_t seed, const CampaignSizes& sizes, unsigned threads = 0);
std::uint64_t campaign_seed(std::uint64_t seed, const char* member);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> a, std::vector<double> b);

struct VerifyOptions {
    Suite suite = Suite::fast;
    std::uint64_t seed = 0;
    std::int64_t replicates = 0;  // 0 keeps the default campaign sizes
    unsigned threads = 0;
    AiryFn airy_ai;  // empty: the library implementation
    bounds::BoundConstants constants = bounds::BoundConstants::calibrated();
};

struct VerifyReport {
    Suite suite = Suite::fast;
    std::uint64_t seed = 0;
    std::vector<CheckRow> rows;

    std::size_t count(Status s) const;
    /// True unless some row has Status::fail.
    bool passed() const { return count(Status::fail) == 0; }
    std::string to_json() const;
};

VerifyReport run_verify(const VerifyOptions& options);

}  // namespace kpze::verify
