#include "kpze/tridiag.hpp"

#include "kpze/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kpze::tridiag {

std::size_t sturm_count_below(std::span<const double> diag, std::span<const double> off_sq, double x) {
    constexpr double pivmin = std::numeric_limits<double>::min() * 1e10;
    std::size_t count = 0;
    double q = diag[0] - x;
    if (std::fabs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        q = diag[i] - x - off_sq[i - 1] / q;
        if (std::fabs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

namespace {

// Bisection for ascending indices [first, first + k) with shared brackets:
// every count refines the brackets of all targets.
std::vector<double> bisect_range(std::span<const double> diag, std::span<const double> off_sq,
                                 std::size_t first, std::size_t k, double tol) {
    const std::size_t n = diag.size();
    if (off_sq.size() + 1 != n) throw InvalidArgument("tridiag: off-diagonal must have n - 1 entries");
    if (k > n) throw InvalidArgument("tridiag: requested more eigenvalues than the dimension");
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::sqrt(off_sq[i - 1]) : 0.0) + (i + 1 < n ? std::sqrt(off_sq[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    const double pad = 1e-12 * std::max(std::fabs(lo), std::fabs(hi)) + tol;
    std::vector<double> lower(k, lo - pad), upper(k, hi + pad);
    auto refine = [&](double x, std::size_t c) {
        for (std::size_t t = 0; t < k; ++t) {
            if (c >= first + t + 1) {
                upper[t] = std::min(upper[t], x);
            } else {
                lower[t] = std::max(lower[t], x);
            }
        }
    };
    for (std::size_t t = 0; t < k; ++t) {
        while (upper[t] - lower[t] > tol) {
            const double mid = 0.5 * (lower[t] + upper[t]);
            if (mid <= lower[t] || mid >= upper[t]) break;
            refine(mid, sturm_count_below(diag, off_sq, mid));
        }
    }
    std::vector<double> out(k);
    for (std::size_t t = 0; t < k; ++t) out[t] = 0.5 * (lower[t] + upper[t]);
    return out;
}

}  // namespace

std::vector<double> largest_eigenvalues(std::span<const double> diag, std::span<const double> off_sq,
                                        std::size_t k, double tol) {
    auto ascending = bisect_range(diag, off_sq, diag.size() - std::min(k, diag.size()), k, tol);
    std::reverse(ascending.begin(), ascending.end());
    return ascending;
}

std::vector<double> smallest_eigenvalues(std::span<const double> diag,
                                         std::span<const double> off_sq, std::size_t k, double tol) {
    return bisect_range(diag, off_sq, 0, k, tol);
}

}  // namespace kpze::tridiag
