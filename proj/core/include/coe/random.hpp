#pragma once

#include <cstdint>
#include <random>

namespace coe {

/// Derives an independent generator for the work unit (seed, a, b).
/// Streams depend only on their key, never on the order they are created in.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
  return std::mt19937_64(stream_key(seed, a, b));
}

}  // namespace coe
