#pragma once

#include <cstdint>
#include <vector>

namespace kpze::spectrum {

enum class SpectrumMethod { airy_zero, mt59_approx };

/// Eigenvalues lambda_1 < lambda_2 < ... of the Airy operator -d^2/dx^2 + x
/// on the half-line with a Dirichlet condition at 0.
struct SpectrumTable {
    std::vector<double> eigenvalues;
    SpectrumMethod method = SpectrumMethod::airy_zero;
    std::int64_t k_max = 0;

    double operator[](std::size_t k1) const { return eigenvalues.at(k1 - 1); }  // 1-based
};

inline constexpr std::int64_t kMaxEigenvalues = 1'000'000;

/// (3 pi / 2 (k - 1/4))^{2/3}, the remainder-free eigenvalue approximation.
double mt59_eigenvalue(std::int64_t k);

/// Magnitude of the k-th negative zero of Ai, to ~1e-12 absolute.
double airy_zero_magnitude(std::int64_t k);

SpectrumTable airy_eigs(std::int64_t k_max, SpectrumMethod method);

/// k(T) = #{n : lambda_n <= T} from the Airy-zero eigenvalues.
std::int64_t count_eigs_below(double T);

}  // namespace kpze::spectrum
