#pragma once

#include <cstdint>
#include <random>

namespace pwlab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stream-splitting rule: sub-stream i of a master seed is an mt19937_64
// seeded with splitmix64(master + (i+1)*golden). Each sample owns one
// sub-stream, so results do not depend on how samples are scheduled
// across threads.
inline std::mt19937_64 substream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master + (index + 1) * 0x9e3779b97f4a7c15ull;
    return std::mt19937_64(splitmix64(s));
}

// Uniform in [0,1) from the top 53 bits of the raw engine output.
// std::uniform_real_distribution is not pinned down by the standard;
// this is, so streams are reproducible across toolchains.
inline double u01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace pwlab
