#pragma once

// Single-pixel brightness scenes with one isolated perturbation window each:
// the signal sits at level 0 at both window edges and for at least 2000 us
// after the window, so delays up to that length replay into quiet time.
// Levels are multiples of 1/4 so mirrored arithmetic is exact at C = 0.25.

#include <cstdint>
#include <vector>

#include "estf/event_gen.hpp"

namespace testing {

struct IsolatedScene {
    estf::BrightnessSignal signal;
    std::uint64_t t0, t1;
};

inline constexpr double kSceneThreshold = 0.25;

inline std::vector<IsolatedScene> isolated_scenes() {
    return {
        {{4, 9, {{0, 0.0}, {500, 0.0}, {1500, 1.0}, {2500, 0.0}, {9000, 0.0}, {9800, 0.75}, {12000, 0.75}}}, 400, 2600},
        {{0, 0, {{0, 0.0}, {700, -0.5}, {1100, 0.0}, {3000, 0.0}, {3800, 1.25}, {4100, -0.75}, {5000, 0.0},
                 {11000, 0.0}, {11900, 0.5}, {12000, 0.5}}},
         2900, 5100},
        {{63, 1, {{0, 0.0}, {2000, 0.0}, {2003, 0.5}, {2700, -0.25}, {3333, 0.0}, {10000, 0.0}, {11000, -0.5}, {12000, -0.5}}}, 1900, 3400},
    };
}

}  // namespace testing
