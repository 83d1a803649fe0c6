#pragma once

#include <cstdint>
#include <random>

namespace diskflow {

/// SplitMix64 step, used to derive independent per-batch generator seeds
/// from a user seed. Batch streams make Monte Carlo tallies reproducible
/// for a fixed seed regardless of how batches are scheduled.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed + 0x632be59bd9b4e019ull * (stream + 1));
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(stream_seed(seed, stream));
}

}  // namespace diskflow
