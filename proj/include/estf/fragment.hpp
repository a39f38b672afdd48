#pragma once

#include <cstdint>

#include "estf/event.hpp"
#include "estf/random.hpp"

namespace estf {

/// floor(n * f) for finite f >= 0, with the double product snapped up to the
/// next integer when it falls short by at most 2^-48 relative. That makes
/// decimal fractions behave as written: floor(100 * 0.29) == 29.
std::uint64_t floor_mul(std::uint64_t n, double f);

/// Index range [floor(N*begin), floor(N*(begin+c))).
///
/// `begin + c` is evaluated in double precision; both bounds use floor_mul.
/// Throws InvalidArgument unless 0 <= c <= 1 and 0 <= begin <= 1 - c
/// (up to a 2^-48 rounding allowance).
FragmentSpec select_fragment(std::size_t n, double ratio, double begin);

inline FragmentSpec select_fragment(const EventStream& stream, double ratio, double begin) {
    return select_fragment(stream.size(), ratio, begin);
}

struct FragmentDraw {
    double begin = 0.0;
    FragmentSpec fragment;
};

/// Draws begin uniformly from the closed interval [0, 1 - c] (one generator
/// word) and selects the matching fragment.
FragmentDraw draw_fragment(std::size_t n, double ratio, Rng& rng);

inline FragmentDraw draw_fragment(const EventStream& stream, double ratio, Rng& rng) {
    return draw_fragment(stream.size(), ratio, rng);
}

/// Contiguous index range of the events with t in [t0, t1].
FragmentSpec fragment_in_window(const EventStream& stream, std::uint64_t t0, std::uint64_t t1);

}  // namespace estf
