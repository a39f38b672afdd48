#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "estf/event.hpp"

namespace estf {

struct BrightnessSample {
    std::uint64_t t = 0;  // microseconds
    double level = 0.0;   // log-intensity

    friend bool operator==(const BrightnessSample&, const BrightnessSample&) = default;
};

/// Piecewise-linear log-intensity trajectory of one pixel.
/// Sample times must be strictly increasing.
struct BrightnessSignal {
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    std::vector<BrightnessSample> samples;

    /// Linear interpolation; clamps to the end values outside the sampled span.
    double at(double t) const;

    friend bool operator==(const BrightnessSignal&, const BrightnessSignal&) = default;
};

struct SensorModel {
    double threshold = 0.2;            // contrast threshold C, > 0
    std::uint64_t refractory_us = 0;
    SensorGeometry geometry;
};

enum class PerturbationKind { OppositeLightDark, InvertedVariation, DelayedVariation };

struct Perturbation {
    PerturbationKind kind = PerturbationKind::DelayedVariation;
    std::uint64_t t_start = 0;
    std::uint64_t t_end = 0;
    std::uint64_t delay_us = 0;  // DelayedVariation only
};

/// Noise-free pixel model: an event fires whenever the signal moves a full
/// threshold away from the reference level.
///
/// The reference resets to the exact crossing level after each event, then
/// a hard refractory hold starts during which crossings are ignored; at the
/// end of a non-zero hold the reference re-latches to the signal value.
/// Event times are the interpolated crossing times rounded down, computed
/// relative to the start of each segment so that a pure time shift of the
/// signal shifts every event by the same amount.
EventStream generate_events(const BrightnessSignal& signal, const SensorModel& model);

/// Multi-pixel generation; pixels run in parallel and merge stably by time,
/// ties in signal order.
EventStream generate_events(const std::vector<BrightnessSignal>& signals, const SensorModel& model);

/// Brightness disturbances on [t_start, t_end]:
///  - OppositeLightDark mirrors levels about the window-start level.
///  - InvertedVariation reflects the window in time about its midpoint.
///  - DelayedVariation holds the window-start level for delay_us, then
///    replays the window shifted by delay_us; original samples covered by the
///    replayed window are dropped.
/// Edge samples are inserted where the window boundary falls between samples.
/// Throws InvalidArgument when the window is outside the signal or a delayed
/// window would run past the last sample.
BrightnessSignal apply_perturbation(const BrightnessSignal& signal, const Perturbation& pert);

struct PerturbationEffect {
    EventStream baseline;
    EventStream perturbed;
};

PerturbationEffect perturbation_effect(const BrightnessSignal& signal, const SensorModel& model, const Perturbation& pert);

/// A scene file: header `width height t_max`, then one `x y t_us L` sample
/// per line. Samples are grouped per pixel in order of first appearance.
struct Scene {
    SensorGeometry geometry;
    std::vector<BrightnessSignal> signals;
};

/// Throws FormatError (offset = byte position of the offending line).
Scene parse_scene(std::string_view text);
Scene read_scene(const std::string& path);

}  // namespace estf
