#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "estf/event.hpp"
#include "estf/fragment.hpp"
#include "estf/random.hpp"

namespace estf {

/// Coordinate a fragment transform acts on. The two spatial axes are
/// separate domains; Polarity is only meaningful for inversion.
enum class Domain { X, Y, Time, Polarity };

std::string_view to_string(Domain d);
std::optional<Domain> parse_domain(std::string_view name);

/// Reflection / drift extent of `d` on `geometry`:
/// width-1, height-1, t_max, or 1 for polarity.
std::uint64_t domain_extent(const SensorGeometry& geometry, Domain d);

struct DriftParams {
    Domain domain = Domain::Time;
    double ratio = 0.0;
    std::int64_t distance = 0;  // signed, in domain units

    friend bool operator==(const DriftParams&, const DriftParams&) = default;
};

struct EstfConfig {
    double c_istp = 0.0;
    double c_dst = 0.0;
    Domain d_istp = Domain::Polarity;
    Domain d_dst = Domain::Time;
    double r = 0.0;
    std::uint64_t seed = 0;
};

/// Inverts one coordinate of the fragment events: d -> R_d - d.
///
/// Event count is preserved. Inverting Time reverses the fragment inside
/// the global timeline; the result is re-sorted stably (ties by original
/// index), so fragment-internal order flips except among equal timestamps.
EventStream istp(const EventStream& stream, FragmentSpec fragment, Domain domain);

/// Shifts one coordinate of the fragment events by `params.distance`.
/// Shifted events leaving [0, width) x [0, height) or [0, t_max] are dropped.
EventStream dst(const EventStream& stream, FragmentSpec fragment, const DriftParams& params);

/// Draws a distance uniformly from the integers in [-floor(r*R_d), floor(r*R_d)]
/// (one rejection-sampled draw).
DriftParams draw_drift(const SensorGeometry& geometry, Domain domain, double ratio, Rng& rng);

/// Every random quantity consumed by one estf call.
struct EstfDraws {
    FragmentDraw istp;
    FragmentDraw dst;
    DriftParams drift;
};

struct EstfResult {
    EventStream stream;
    EstfDraws draws;
};

/// Inversion followed by drift on independently drawn fragments.
///
/// Generator order: inversion begin, drift begin, drift distance. The drift
/// fragment indexes the inverted stream. Throws InvalidArgument on a bad config.
EstfResult estf_traced(const EventStream& stream, const EstfConfig& config, Rng& rng);

inline EventStream estf(const EventStream& stream, const EstfConfig& config) {
    Rng rng(config.seed);
    return estf_traced(stream, config, rng).stream;
}

void check_config(const EstfConfig& config);

// Baselines ---------------------------------------------------------------

enum class DropStrategy { Random, TimeWindow, Area };

struct DropParams {
    DropStrategy strategy = DropStrategy::Random;
    double fraction = 0.0;          // Random: per-event drop probability
    std::uint64_t t0 = 0, t1 = 0;   // TimeWindow: drop t in [t0, t1)
    std::uint32_t x0 = 0, y0 = 0;   // Area: drop [x0, x1) x [y0, y1)
    std::uint32_t x1 = 0, y1 = 0;
};

/// Event deletion. The Random strategy takes one generator word as a key
/// and drops event i iff unit(mix64(key + i)) < fraction.
EventStream event_drop(const EventStream& stream, const DropParams& params, Rng& rng);

/// x -> width - 1 - x over the whole stream.
EventStream flip_horizontal(const EventStream& stream);

/// Global spatial shift; events leaving the sensor are dropped.
/// Requires |dx| < width and |dy| < height.
EventStream translate(const EventStream& stream, std::int64_t dx, std::int64_t dy);

}  // namespace estf
