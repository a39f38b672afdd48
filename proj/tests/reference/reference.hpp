#pragma once

// Straight-line serial reference for every transform. Each function walks
// the events one at a time, applies the textbook per-event rule, and sorts
// the survivors by (t, original index). Nothing here calls the kernels.
//
// Fragment arithmetic uses exact rationals (Boost.Multiprecision) instead
// of the library's integer floor, and the random draws re-derive their
// integer/real mappings from raw generator words.

#include <cstdint>
#include <random>
#include <vector>

#include "estf/event.hpp"
#include "estf/transforms.hpp"
#include "estf/representation.hpp"

namespace ref {

using estf::Domain;
using estf::Event;
using estf::EventStream;
using estf::FragmentSpec;

std::uint64_t exact_floor_mul(std::uint64_t n, double f);
FragmentSpec select_fragment(std::size_t n, double ratio, double begin);

double draw_begin(std::mt19937_64& gen, double ratio);
std::int64_t draw_distance(std::mt19937_64& gen, std::int64_t bound);

EventStream istp(const EventStream& s, FragmentSpec frag, Domain d);
EventStream dst(const EventStream& s, FragmentSpec frag, Domain d, std::int64_t distance);
EventStream estf(const EventStream& s, const estf::EstfConfig& config);
EventStream event_drop(const EventStream& s, const estf::DropParams& params, std::uint64_t seed);
EventStream flip_horizontal(const EventStream& s);
EventStream translate(const EventStream& s, std::int64_t dx, std::int64_t dy);
estf::VoxelGrid accumulate(const EventStream& s, std::uint32_t bins_t);

}  // namespace ref
