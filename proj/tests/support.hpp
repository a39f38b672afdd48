#pragma once

// Random stream generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "estf/event.hpp"

namespace testing {

struct StreamShape {
    std::size_t max_events = 200;
    std::uint32_t max_width = 64;
    std::uint32_t max_height = 64;
    std::uint64_t max_t = 100000;
};

/// Sorted, in-bounds stream with a mix of unique and repeated timestamps
/// so stable tie handling is exercised.
inline estf::EventStream random_stream(std::mt19937_64& gen, const StreamShape& shape = {}) {
    auto pick = [&gen](std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(gen);
    };
    const estf::SensorGeometry g{static_cast<std::uint32_t>(pick(1, shape.max_width)),
                                 static_cast<std::uint32_t>(pick(1, shape.max_height)), pick(0, shape.max_t)};
    const std::size_t n = pick(0, shape.max_events);
    // Small timestamp pools force many ties.
    const bool tie_heavy = pick(0, 2) == 0;
    const std::uint64_t t_cap = tie_heavy ? std::min<std::uint64_t>(g.t_max, pick(0, 8)) : g.t_max;

    std::vector<estf::Event> events;
    events.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        events.emplace_back(static_cast<std::uint16_t>(pick(0, g.width - 1)), static_cast<std::uint16_t>(pick(0, g.height - 1)),
                            pick(0, t_cap), static_cast<std::uint8_t>(pick(0, 1)));
    }
    std::stable_sort(events.begin(), events.end(), [](const estf::Event& a, const estf::Event& b) { return a.t < b.t; });
    return {g, std::move(events)};
}

/// Large stream with uniformly spread timestamps, for throughput runs.
inline estf::EventStream dense_stream(std::size_t n, std::uint64_t seed, estf::SensorGeometry g = {346, 260, 10'000'000}) {
    std::mt19937_64 gen(seed);
    std::vector<estf::Event> events(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t w = gen();
        events[i] = estf::Event(static_cast<std::uint16_t>(w % g.width), static_cast<std::uint16_t>((w >> 16) % g.height),
                                (w >> 32) % (g.t_max + 1), static_cast<std::uint8_t>((w >> 63) & 1));
    }
    std::sort(events.begin(), events.end(), [](const estf::Event& a, const estf::Event& b) { return a.t < b.t; });
    return {g, std::move(events)};
}

}  // namespace testing
