#include "estf/fragment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "estf/error.hpp"

namespace estf {

namespace {
constexpr double kSnap = 0x1.0p-48;
}  // namespace

std::uint64_t floor_mul(std::uint64_t n, double f) {
    if (!(f >= 0.0) || !std::isfinite(f)) throw InvalidArgument("floor_mul: factor must be finite and non-negative");
    const double x = static_cast<double>(n) * f;
    if (!(x < 0x1.0p64)) throw InvalidArgument("floor_mul: overflow");
    // Products a few ulps short of an integer come from decimal fractions
    // (0.29 * 100) and are taken to mean that integer.
    const double up = std::ceil(x);
    if (up - x <= x * kSnap && up < 0x1.0p64) return static_cast<std::uint64_t>(up);
    return static_cast<std::uint64_t>(std::floor(x));
}

FragmentSpec select_fragment(std::size_t n, double ratio, double begin) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw InvalidArgument("fragment ratio must lie in [0, 1]");
    if (!(begin >= 0.0)) throw InvalidArgument("fragment begin must be non-negative");
    // Decimal pairs like 3/7 + 4/7 may overshoot 1 by an ulp; that is not an overrun.
    if (begin - (1.0 - ratio) > kSnap) throw InvalidArgument("fragment exceeds the stream: begin + ratio > 1");

    const std::size_t start = std::min<std::uint64_t>(floor_mul(n, begin), n);
    const std::size_t end = std::min<std::uint64_t>(floor_mul(n, begin + ratio), n);
    return {start, std::max(start, end)};
}

FragmentDraw draw_fragment(std::size_t n, double ratio, Rng& rng) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw InvalidArgument("fragment ratio must lie in [0, 1]");
    const double room = 1.0 - ratio;
    const double begin = std::min(rng.unit_closed() * room, room);
    return {begin, select_fragment(n, ratio, begin)};
}

FragmentSpec fragment_in_window(const EventStream& stream, std::uint64_t t0, std::uint64_t t1) {
    const auto events = stream.events();
    const auto lo = std::partition_point(events.begin(), events.end(), [&](const Event& e) { return e.t < t0; });
    const auto hi = std::partition_point(lo, events.end(), [&](const Event& e) { return e.t <= t1; });
    return {static_cast<std::size_t>(lo - events.begin()), static_cast<std::size_t>(hi - events.begin())};
}

}  // namespace estf
