#pragma once

#include <cstdint>

namespace perciso {

// SplitMix64 mixing function. Each consumer addresses the stream by index,
// never by call order, so sampling is bit-exact regardless of evaluation
// order or worker count.
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

[[nodiscard]] inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

/// Value i of the stream rooted at seed: mix(seed + (i+1)*golden).
[[nodiscard]] inline std::uint64_t splitmix_at(std::uint64_t seed, std::uint64_t i) noexcept {
    return splitmix64(seed + (i + 1) * kGolden);
}

/// Uniform in [0,1) with 53 random bits, the usual top-bits construction.
[[nodiscard]] inline double uniform01(std::uint64_t z) noexcept {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

/// Stateful convenience over the same indexed stream (bootstrap, heuristics).
class SplitMixStream {
public:
    explicit SplitMixStream(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t next_u64() noexcept { return splitmix_at(seed_, i_++); }
    double next_double() noexcept { return uniform01(next_u64()); }
    /// Uniform integer in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(bound)) % bound;
    }

private:
    std::uint64_t seed_;
    std::uint64_t i_ = 0;
};

}  // namespace perciso
