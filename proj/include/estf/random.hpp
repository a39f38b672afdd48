#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace estf {

/// Seeded generator with platform-independent draws.
///
/// std::mt19937_64 has a fully specified output sequence, but the standard
/// distributions do not, so every mapping from raw words to values is
/// spelled out here. Changing any of them changes golden outputs.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the closed interval [0, 1]: top 53 bits over 2^53 - 1.
    double unit_closed() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740991.0);
    }

    /// Uniform on [0, 1): top 53 bits over 2^53.
    double unit_open() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer on [lo, hi] by rejection sampling over full 64-bit words.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64 engine_;
};

/// Stateless 64-bit mixer (splitmix64 finalizer). Used for counter-based
/// per-event draws so kernels can run in any order.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace estf
