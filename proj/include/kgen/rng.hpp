#pragma once

#include <cstddef>
#include <cstdint>

namespace kgen::rng {

// splitmix64: each output is a bijective hash of a counter that advances by
// the 64-bit golden ratio, so the i-th element of a stream can be produced
// sequentially or by direct indexing. All randomness in the library goes
// through here; parallel consumers index the stream, which keeps results
// independent of thread count and execution order.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// i-th raw output of the stream identified by seed.
inline std::uint64_t stream_at(std::uint64_t seed, std::uint64_t i) {
    return mix64(seed + (i + 1) * kGolden);
}

/// i-th uniform variate on the open interval (0, 1); never returns 0 or 1.
inline double uniform_open(std::uint64_t seed, std::uint64_t i) {
    return (static_cast<double>(stream_at(seed, i) >> 11) + 0.5) * 0x1.0p-53;
}

/// Independent child seed (e.g. one per bootstrap replication).
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    return mix64(mix64(seed) + (salt + 1) * kGolden);
}

/// Sequential view of a stream: the k-th call to next() returns stream_at(seed, k).
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    double next_uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform index in [0, n) by multiply-shift; avoids modulo bias.
    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(n)) >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace kgen::rng
