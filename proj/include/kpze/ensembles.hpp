#pragma once

// Monte Carlo generators for the GOE edge point process.

#include <cstdint>
#include <string_view>
#include <vector>

namespace kpze::ensembles {

enum class Source { tridiag, sao, synthetic };
enum class Sampler { tridiag, sao };

std::string_view to_string(Source s);
std::string_view to_string(Sampler s);

/// Edge-scaled points a_1 > a_2 > ... (possibly thinned).
struct PointConfiguration {
    std::vector<double> points;
    std::size_t k_kept = 0;
    Source source = Source::synthetic;

    /// Throws InvalidArgument unless points are finite, strictly decreasing
    /// and k_kept == points.size().
    void validate() const;
    static PointConfiguration synthetic(std::vector<double> points);
};

struct EnsembleSample {
    std::vector<PointConfiguration> configs;
    std::int64_t n = 0;  // matrix size (tridiag); grid dimension L/h - 1 (sao)
    std::uint64_t seed = 0;
    std::int64_t replicate_count = 0;
    Sampler sampler = Sampler::tridiag;
    std::int64_t k = 0;
};

/// Eigenvalue accuracy of the samplers, in edge-scaled units.
inline constexpr double kEigenTolerance = 1e-9;

/// Edge centring of the tridiagonal sampler. half_shift centres at
/// 2 sqrt(n - 1/2), which removes the O(n^{-1/3}) bias of plain 2 sqrt(n).
enum class Centering { plain, half_shift };

double edge_center(std::int64_t n, Centering centering);

/// beta = 1 tridiagonal Hermite ensemble: diagonal N(0, 2), j-th sub-diagonal
/// chi_{beta (n - j)}, all divided by sqrt(beta). Returns the top k eigenvalues
/// as a_i = n^{1/6} (lambda_i - edge_center(n)).
EnsembleSample sample_tridiag_edge(std::int64_t n, std::int64_t k, std::int64_t replicates,
                                   std::uint64_t seed, unsigned threads = 0,
                                   Centering centering = Centering::half_shift);

struct SaoParams {
    double beta = 1.0;
    double L = 20.0;
    double h = 0.02;
    /// 0 switches the white noise off (deterministic Airy operator).
    double noise_scale = 1.0;
};

/// Finite-difference stochastic Airy operator -d^2/dx^2 + x + (2/sqrt(beta)) B'
/// on (0, L) with Dirichlet ends; stores points = -Lambda_i.
EnsembleSample sample_sao_eigs(const SaoParams& params, std::int64_t k, std::int64_t replicates,
                               std::uint64_t seed, unsigned threads = 0);

/// Keeps each point independently with probability gamma.
PointConfiguration thin(const PointConfiguration& config, double gamma, std::uint64_t seed);

}  // namespace kpze::ensembles
