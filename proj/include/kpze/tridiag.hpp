#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kpze::tridiag {

/// Number of eigenvalues strictly below x of the symmetric tridiagonal matrix
/// with diagonal `diag` and squared off-diagonal `off_sq` (size n - 1).
std::size_t sturm_count_below(std::span<const double> diag, std::span<const double> off_sq, double x);

/// The k largest eigenvalues, descending, each to absolute accuracy tol.
std::vector<double> largest_eigenvalues(std::span<const double> diag, std::span<const double> off_sq,
                                        std::size_t k, double tol);

/// The k smallest eigenvalues, ascending.
std::vector<double> smallest_eigenvalues(std::span<const double> diag,
                                         std::span<const double> off_sq, std::size_t k, double tol);

}  // namespace kpze::tridiag
