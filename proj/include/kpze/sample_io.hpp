#pragma once

// Sample file formats.
//
// Binary (little-endian):
//   char[4]  magic "KPZE"
//   u32      version (1)
//   u32      k
//   u64      replicates
//   u64      seed
//   f64[replicates * k] points, replicate-major
//
// CSV: header "replicate,a_1,...,a_k", one row per replicate.

#include "kpze/ensembles.hpp"

#include <iosfwd>
#include <string>

namespace kpze::io {

inline constexpr std::uint32_t kSampleFormatVersion = 1;
inline constexpr std::size_t kSampleHeaderBytes = 28;

void write_sample_binary(std::ostream& out, const ensembles::EnsembleSample& sample);
ensembles::EnsembleSample read_sample_binary(std::istream& in);

void write_sample_csv(std::ostream& out, const ensembles::EnsembleSample& sample);

void save_sample(const std::string& path, const ensembles::EnsembleSample& sample, bool csv);
ensembles::EnsembleSample load_sample(const std::string& path);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

}  // namespace kpze::io
