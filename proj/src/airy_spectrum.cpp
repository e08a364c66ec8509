#include "kpze/airy_spectrum.hpp"

#include "kpze/error.hpp"
#include "kpze/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace kpze::spectrum {

double mt59_eigenvalue(std::int64_t k) {
    return std::pow(1.5 * std::numbers::pi * (static_cast<double>(k) - 0.25), 2.0 / 3.0);
}

double airy_zero_magnitude(std::int64_t k) {
    if (k < 1) throw InvalidArgument("airy_zero_magnitude: k must be >= 1");
    const double guess = mt59_eigenvalue(k);
    // Consecutive zeros are ~pi / sqrt(lambda) apart; a quarter spacing keeps
    // the bracket around a single zero.
    double half = std::min(0.5, 0.25 * std::numbers::pi / std::sqrt(guess));
    auto f = [](double lambda) { return specfun::airy_ai(-lambda); };
    double lo = guess - half, hi = guess + half;
    double flo = f(lo), fhi = f(hi);
    for (int widen = 0; flo * fhi > 0.0; ++widen) {
        if (widen > 8) {
            throw NumericError("airy_zero_magnitude: failed to bracket zero " + std::to_string(k));
        }
        half *= 1.5;
        lo = guess - half;
        hi = guess + half;
        flo = f(lo);
        fhi = f(hi);
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

std::mutex cache_mutex;
std::vector<double> zero_cache;

std::vector<double> cached_zeros(std::int64_t k_max) {
    std::lock_guard lock(cache_mutex);
    for (auto k = static_cast<std::int64_t>(zero_cache.size()) + 1; k <= k_max; ++k) {
        zero_cache.push_back(airy_zero_magnitude(k));
    }
    return {zero_cache.begin(), zero_cache.begin() + k_max};
}

}  // namespace

SpectrumTable airy_eigs(std::int64_t k_max, SpectrumMethod method) {
    if (k_max < 1 || k_max > kMaxEigenvalues) {
        throw InvalidArgument("airy_eigs: k_max must lie in [1, 1e6], got " + std::to_string(k_max));
    }
    SpectrumTable table;
    table.method = method;
    table.k_max = k_max;
    if (method == SpectrumMethod::airy_zero) {
        table.eigenvalues = cached_zeros(k_max);
    } else {
        table.eigenvalues.resize(k_max);
        for (std::int64_t k = 1; k <= k_max; ++k) table.eigenvalues[k - 1] = mt59_eigenvalue(k);
    }
    return table;
}

std::int64_t count_eigs_below(double T) {
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw InvalidArgument("count_eigs_below: T must be a finite nonnegative number");
    }
    const auto bound = static_cast<std::int64_t>(2.0 / (3.0 * std::numbers::pi) * std::pow(T, 1.5)) + 3;
    const SpectrumTable table = airy_eigs(std::min(bound, kMaxEigenvalues), SpectrumMethod::airy_zero);
    return std::upper_bound(table.eigenvalues.begin(), table.eigenvalues.end(), T) -
           table.eigenvalues.begin();
}

}  // namespace kpze::spectrum
