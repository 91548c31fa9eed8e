#pragma once

#include <cstdint>
#include <random>

namespace hsifc {

/// Every randomized operation in the library draws from std::mt19937_64
/// seeded explicitly by the caller. The engine's algorithm is fixed by the
/// C++ standard, so a seed reproduces the same stream on every run of the
/// same build. Distribution adapters are implementation-defined, so bit
/// equality across different standard libraries is not promised.
using Rng = std::mt19937_64;

/// Derives an independent sub-seed from a master seed and a stream index
/// (SplitMix64 finalizer). Used to give each pipeline stage its own seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + (stream + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace seed_stream {
inline constexpr std::uint64_t split = 0;
inline constexpr std::uint64_t balance = 1;
inline constexpr std::uint64_t init = 2;
inline constexpr std::uint64_t shuffle = 3;
}  // namespace seed_stream

}  // namespace hsifc
