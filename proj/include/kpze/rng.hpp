#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace kpze::rng {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t tag_hash(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of stream (seed, index, tag); distinct tags give independent streams
/// for the same replicate.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index, std::string_view tag = {}) {
    return splitmix64(splitmix64(seed ^ tag_hash(tag)) + splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline Engine stream(std::uint64_t seed, std::uint64_t index, std::string_view tag = {}) {
    return Engine(stream_seed(seed, index, tag));
}

}  // namespace kpze::rng
