#include "kpze/ensembles.hpp"

#include "kpze/error.hpp"
#include "kpze/parallel.hpp"
#include "kpze/rng.hpp"
#include "kpze/tridiag.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <string>

namespace kpze::parallel {
namespace {
std::atomic<unsigned> configured_threads{0};
}

unsigned default_threads() {
    const unsigned n = configured_threads.load();
    if (n != 0) return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_threads(unsigned n) { configured_threads.store(n); }

}  // namespace kpze::parallel

namespace kpze::ensembles {

std::string_view to_string(Source s) {
    switch (s) {
        case Source::tridiag: return "tridiag";
        case Source::sao: return "sao";
        case Source::synthetic: return "synthetic";
    }
    return "unknown";
}

std::string_view to_string(Sampler s) { return s == Sampler::tridiag ? "tridiag" : "sao"; }

void PointConfiguration::validate() const {
    if (k_kept != points.size()) throw InvalidArgument("PointConfiguration: k_kept != number of points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i])) throw InvalidArgument("PointConfiguration: non-finite point");
        if (i > 0 && !(points[i] < points[i - 1])) {
            throw InvalidArgument("PointConfiguration: points must be strictly decreasing");
        }
    }
}

PointConfiguration PointConfiguration::synthetic(std::vector<double> points) {
    PointConfiguration c;
    c.k_kept = points.size();
    c.points = std::move(points);
    c.source = Source::synthetic;
    c.validate();
    return c;
}

double edge_center(std::int64_t n, Centering centering) {
    const double m = static_cast<double>(n) - (centering == Centering::half_shift ? 0.5 : 0.0);
    return 2.0 * std::sqrt(m);
}

EnsembleSample sample_tridiag_edge(std::int64_t n, std::int64_t k, std::int64_t replicates,
                                   std::uint64_t seed, unsigned threads, Centering centering) {
    if (n < 50) throw InvalidArgument("sample_tridiag_edge: n must be >= 50");
    if (k < 1 || k > n) throw InvalidArgument("sample_tridiag_edge: k must lie in [1, n]");
    if (replicates < 1) throw InvalidArgument("sample_tridiag_edge: replicates must be positive");

    EnsembleSample sample;
    sample.n = n;
    sample.seed = seed;
    sample.replicate_count = replicates;
    sample.sampler = Sampler::tridiag;
    sample.k = k;
    sample.configs.resize(replicates);

    constexpr double beta = 1.0;
    const double edge = edge_center(n, centering);
    const double scale = std::pow(static_cast<double>(n), 1.0 / 6.0);
    const double tol = kEigenTolerance / scale;

    parallel::for_each_index(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
        rng::Engine eng = rng::stream(seed, r, "tridiag");
        std::normal_distribution<double> normal(0.0, std::sqrt(2.0));
        std::vector<double> diag(n), off_sq(n - 1);
        for (auto& d : diag) d = normal(eng) / std::sqrt(beta);
        for (std::int64_t j = 1; j < n; ++j) {
            std::chi_squared_distribution<double> chi2(beta * static_cast<double>(n - j));
            off_sq[j - 1] = chi2(eng) / beta;
        }
        std::vector<double> top;
        try {
            top = tridiag::largest_eigenvalues(diag, off_sq, static_cast<std::size_t>(k), tol);
        } catch (const std::exception& e) {
            throw NumericError("sample_tridiag_edge: eigensolver failed on replicate " +
                               std::to_string(r) + ": " + e.what());
        }
        PointConfiguration& c = sample.configs[r];
        c.source = Source::tridiag;
        c.points.resize(k);
        for (std::int64_t i = 0; i < k; ++i) c.points[i] = scale * (top[i] - edge);
        c.k_kept = static_cast<std::size_t>(k);
    });
    return sample;
}

EnsembleSample sample_sao_eigs(const SaoParams& p, std::int64_t k, std::int64_t replicates,
                               std::uint64_t seed, unsigned threads) {
    if (!(p.beta > 0.0)) throw InvalidArgument("sample_sao_eigs: beta must be positive");
    if (!(p.h > 0.0) || p.h > 0.1) throw InvalidArgument("sample_sao_eigs: grid too coarse, need 0 < h <= 0.1");
    if (!(p.L >= 10.0)) throw InvalidArgument("sample_sao_eigs: L must be >= 10");
    if (!(p.noise_scale >= 0.0)) throw InvalidArgument("sample_sao_eigs: noise_scale must be >= 0");
    const auto dim = static_cast<std::int64_t>(std::lround(p.L / p.h)) - 1;
    if (k < 1 || k > dim) throw InvalidArgument("sample_sao_eigs: k must lie in [1, L/h - 1]");
    if (replicates < 1) throw InvalidArgument("sample_sao_eigs: replicates must be positive");

    EnsembleSample sample;
    sample.n = dim;
    sample.seed = seed;
    sample.replicate_count = replicates;
    sample.sampler = Sampler::sao;
    sample.k = k;
    sample.configs.resize(replicates);

    const double inv_h2 = 1.0 / (p.h * p.h);
    // Discrete white noise Delta B / h with Var(Delta B) = h, amplitude 2/sqrt(beta).
    const double noise_sd = p.noise_scale * 2.0 / std::sqrt(p.beta) / std::sqrt(p.h);
    const Source source = p.noise_scale == 0.0 ? Source::synthetic : Source::sao;

    parallel::for_each_index(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
        rng::Engine eng = rng::stream(seed, r, "sao");
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> diag(dim), off_sq(dim - 1, inv_h2 * inv_h2);
        for (std::int64_t i = 0; i < dim; ++i) {
            diag[i] = 2.0 * inv_h2 + (i + 1) * p.h + (noise_sd > 0.0 ? noise_sd * normal(eng) : 0.0);
        }
        std::vector<double> low;
        try {
            low = tridiag::smallest_eigenvalues(diag, off_sq, static_cast<std::size_t>(k), kEigenTolerance);
        } catch (const std::exception& e) {
            throw NumericError("sample_sao_eigs: eigensolver failed on replicate " + std::to_string(r) +
                               ": " + e.what());
        }
        PointConfiguration& c = sample.configs[r];
        c.source = source;
        c.points.resize(k);
        for (std::int64_t i = 0; i < k; ++i) c.points[i] = -low[i];
        c.k_kept = static_cast<std::size_t>(k);
    });
    return sample;
}

PointConfiguration thin(const PointConfiguration& config, double gamma, std::uint64_t seed) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("thin: gamma must lie in [0, 1]");
    PointConfiguration out;
    out.source = config.source;
    if (gamma == 1.0) {
        out.points = config.points;
    } else if (gamma > 0.0) {
        rng::Engine eng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (double x : config.points) {
            if (unif(eng) < gamma) out.points.push_back(x);
        }
    }
    out.k_kept = out.points.size();
    return out;
}

}  // namespace kpze::ensembles
