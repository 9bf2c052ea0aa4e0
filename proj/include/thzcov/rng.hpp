#pragma once

#include <cstdint>
#include <random>

namespace thzcov {

// splitmix64 step; used to derive independent per-trial generator seeds
// from a master seed so results do not depend on worker count.
inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based stream: (seed, stream) -> seeded mt19937_64.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t s = seed;
    (void)splitmix64(s);
    s ^= 0xD1B54A32D192ED03ULL * (stream + 1);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return std::mt19937_64(a ^ (b << 1));
}

} // namespace thzcov
