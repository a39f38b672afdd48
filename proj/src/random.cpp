#include "estf/random.hpp"

#include <limits>

#include "estf/error.hpp"

namespace estf {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw InvalidArgument("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(next_u64());
    const std::uint64_t range = span + 1;
    // Largest multiple of range that fits in 2^64; reject words at or above it.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
    std::uint64_t word;
    do {
        word = next_u64();
    } while (word > limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + word % range);
}

}  // namespace estf
