// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string_view>

namespace multiphase {

enum class RngAlgorithm : std::uint8_t { splitmix64 };

constexpr std::string_view to_string(RngAlgorithm a) {
    switch (a) {
        case RngAlgorithm::splitmix64: return "splitmix64";
    }
    return "unknown";
}

/// Explicit generator state. Copy it to fork a stream; `split()` derives an
/// independent child stream and advances this one.
struct RngState {
    std::uint64_t state = 0;
    RngAlgorithm algorithm = RngAlgorithm::splitmix64;

    static constexpr RngState from_seed(std::uint64_t seed) { return RngState{seed}; }

    constexpr std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    constexpr double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    constexpr RngState split() {
        // Mix twice so the child seed is decorrelated from the parent's next outputs.
        const std::uint64_t a = next_u64();
        const std::uint64_t b = next_u64();
        return RngState{a ^ (b << 1) ^ 0x632be59bd9b4e019ULL, algorithm};
    }

    friend constexpr bool operator==(const RngState&, const RngState&) = default;
};

}  // namespace multiphase
