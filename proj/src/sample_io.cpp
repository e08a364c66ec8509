#include "kpze/sample_io.hpp"

#include "kpze/error.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace kpze::io {
namespace {

template <class T>
void put_le(std::ostream& out, T value) {
    std::array<unsigned char, sizeof(T)> bytes{};
    std::uint64_t bits = 0;
    if constexpr (std::is_same_v<T, double>) {
        bits = std::bit_cast<std::uint64_t>(value);
    } else {
        bits = static_cast<std::uint64_t>(value);
    }
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
        throw InvalidArgument("sample file truncated");
    }
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    if constexpr (std::is_same_v<T, double>) {
        return std::bit_cast<double>(bits);
    } else {
        return static_cast<T>(bits);
    }
}

}  // namespace

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

void write_sample_binary(std::ostream& out, const ensembles::EnsembleSample& sample) {
    const auto k = static_cast<std::uint32_t>(sample.k);
    for (const auto& c : sample.configs) {
        if (c.points.size() != k) throw InvalidArgument("write_sample_binary: ragged configurations");
    }
    out.write("KPZE", 4);
    put_le<std::uint32_t>(out, kSampleFormatVersion);
    put_le<std::uint32_t>(out, k);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(sample.configs.size()));
    put_le<std::uint64_t>(out, sample.seed);
    for (const auto& c : sample.configs) {
        for (double x : c.points) put_le<double>(out, x);
    }
}

ensembles::EnsembleSample read_sample_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "KPZE", 4) != 0) {
        throw InvalidArgument("not a KPZE sample file (bad magic)");
    }
    const auto version = get_le<std::uint32_t>(in);
    if (version != kSampleFormatVersion) {
        throw InvalidArgument("unsupported sample format version " + std::to_string(version));
    }
    ensembles::EnsembleSample sample;
    sample.k = get_le<std::uint32_t>(in);
    sample.replicate_count = static_cast<std::int64_t>(get_le<std::uint64_t>(in));
    sample.seed = get_le<std::uint64_t>(in);
    sample.configs.resize(sample.replicate_count);
    for (auto& c : sample.configs) {
        c.points.resize(sample.k);
        for (auto& x : c.points) x = get_le<double>(in);
        c.k_kept = c.points.size();
        c.source = ensembles::Source::tridiag;
        c.validate();
    }
    return sample;
}

void write_sample_csv(std::ostream& out, const ensembles::EnsembleSample& sample) {
    out << "replicate";
    for (std::int64_t i = 1; i <= sample.k; ++i) out << ",a_" << i;
    out << '\n';
    for (std::size_t r = 0; r < sample.configs.size(); ++r) {
        out << r;
        for (double x : sample.configs[r].points) out << ',' << format_double(x);
        out << '\n';
    }
}

void save_sample(const std::string& path, const ensembles::EnsembleSample& sample, bool csv) {
    std::ofstream out(path, csv ? std::ios::out : std::ios::out | std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    if (csv) {
        write_sample_csv(out, sample);
    } else {
        write_sample_binary(out, sample);
    }
    if (!out) throw std::ios_base::failure("write to " + path + " failed");
}

ensembles::EnsembleSample load_sample(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    return read_sample_binary(in);
}

}  // namespace kpze::io
