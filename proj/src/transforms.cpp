#include "estf/transforms.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "estf/error.hpp"
#include "parallel.hpp"

namespace estf {

namespace {

void check_fragment(const EventStream& stream, FragmentSpec fragment) {
    if (fragment.start > fragment.end || fragment.end > stream.size()) {
        throw InvalidArgument("fragment [" + std::to_string(fragment.start) + ", " + std::to_string(fragment.end) +
                              ") is not a sub-range of a stream of " + std::to_string(stream.size()) + " events");
    }
}

void check_fraction(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
}

template <class T>
std::span<const T> slice(std::span<const T> s, std::size_t lo, std::size_t hi) {
    return s.subspan(lo, hi - lo);
}

// Shifts `value` by `delta` within [0, limit]; nullopt when it leaves.
std::optional<std::uint64_t> shifted(std::uint64_t value, std::int64_t delta, std::uint64_t limit) {
    if (delta < 0) {
        const auto back = static_cast<std::uint64_t>(-(delta + 1)) + 1;
        if (value < back) return std::nullopt;
        return value - back;
    }
    const auto fwd = static_cast<std::uint64_t>(delta);
    if (value > limit || limit - value < fwd) return std::nullopt;
    return value + fwd;
}

}  // namespace

std::string_view to_string(Domain d) {
    switch (d) {
        case Domain::X: return "x";
        case Domain::Y: return "y";
        case Domain::Time: return "time";
        case Domain::Polarity: return "polarity";
    }
    return "?";
}

std::optional<Domain> parse_domain(std::string_view name) {
    if (name == "x") return Domain::X;
    if (name == "y") return Domain::Y;
    if (name == "time" || name == "t") return Domain::Time;
    if (name == "polarity" || name == "p") return Domain::Polarity;
    return std::nullopt;
}

std::uint64_t domain_extent(const SensorGeometry& geometry, Domain d) {
    switch (d) {
        case Domain::X: return geometry.width - 1;
        case Domain::Y: return geometry.height - 1;
        case Domain::Time: return geometry.t_max;
        case Domain::Polarity: return 1;
    }
    return 0;
}

EventStream istp(const EventStream& stream, FragmentSpec fragment, Domain domain) {
    check_fragment(stream, fragment);
    const auto in = stream.events();
    std::vector<Event> out(in.begin(), in.end());
    if (fragment.empty()) return {stream.geometry(), std::move(out)};

    const std::uint64_t extent = domain_extent(stream.geometry(), domain);
    Event* frag = out.data() + fragment.start;
    const std::size_t n = fragment.size();

    switch (domain) {
        case Domain::X:
            detail::parallel_for(n, [&](std::size_t i) { frag[i].x = static_cast<std::uint16_t>(extent - frag[i].x); });
            break;
        case Domain::Y:
            detail::parallel_for(n, [&](std::size_t i) { frag[i].y = static_cast<std::uint16_t>(extent - frag[i].y); });
            break;
        case Domain::Polarity:
            detail::parallel_for(n, [&](std::size_t i) { frag[i].p = static_cast<std::uint8_t>(1 - frag[i].p); });
            break;
        case Domain::Time: {
            detail::parallel_for(n, [&](std::size_t i) { frag[i].t = extent - frag[i].t; });
            // Descending now; flip to ascending, then restore index order inside runs of equal t.
            std::reverse(frag, frag + n);
            for (std::size_t lo = 0; lo < n;) {
                std::size_t hi = lo + 1;
                while (hi < n && frag[hi].t == frag[lo].t) ++hi;
                std::reverse(frag + lo, frag + hi);
                lo = hi;
            }
            const std::span<const Event> all(out);
            auto merged = detail::merge_fragment(slice(all, 0, fragment.start), slice(all, fragment.start, fragment.end),
                                                 slice(all, fragment.end, all.size()));
            return {stream.geometry(), std::move(merged)};
        }
    }
    return {stream.geometry(), std::move(out)};
}

EventStream dst(const EventStream& stream, FragmentSpec fragment, const DriftParams& params) {
    check_fragment(stream, fragment);
    if (params.domain == Domain::Polarity) throw InvalidArgument("drift is undefined on the polarity domain");
    check_fraction(params.ratio, "drift ratio");

    const auto& g = stream.geometry();
    const std::uint64_t extent = domain_extent(g, params.domain);
    const std::uint64_t bound = std::min<std::uint64_t>(floor_mul(extent, params.ratio),
                                                        std::numeric_limits<std::int64_t>::max());
    const std::uint64_t magnitude = params.distance < 0 ? static_cast<std::uint64_t>(-(params.distance + 1)) + 1
                                                        : static_cast<std::uint64_t>(params.distance);
    if (magnitude > bound) throw InvalidArgument("drift distance exceeds ratio * extent");

    const auto in = stream.events();
    if (fragment.empty() || params.distance == 0) return stream;

    const std::int64_t delta = params.distance;
    if (params.domain == Domain::Time) {
        auto moved = detail::compact_map(slice(in, fragment.start, fragment.end),
                                         [&](std::size_t, const Event& e) -> std::optional<Event> {
                                             auto t = shifted(e.t, delta, g.t_max);
                                             if (!t) return std::nullopt;
                                             Event o = e;
                                             o.t = *t;
                                             return o;
                                         });
        auto merged = detail::merge_fragment(slice(in, 0, fragment.start), moved, slice(in, fragment.end, in.size()));
        return {g, std::move(merged)};
    }

    const bool along_x = params.domain == Domain::X;
    auto out = detail::compact_map(in, [&](std::size_t i, const Event& e) -> std::optional<Event> {
        if (!fragment.contains(i)) return e;
        Event o = e;
        if (along_x) {
            auto x = shifted(e.x, delta, g.width - 1);
            if (!x) return std::nullopt;
            o.x = static_cast<std::uint16_t>(*x);
        } else {
            auto y = shifted(e.y, delta, g.height - 1);
            if (!y) return std::nullopt;
            o.y = static_cast<std::uint16_t>(*y);
        }
        return o;
    });
    return {g, std::move(out)};
}

DriftParams draw_drift(const SensorGeometry& geometry, Domain domain, double ratio, Rng& rng) {
    if (domain == Domain::Polarity) throw InvalidArgument("drift is undefined on the polarity domain");
    check_fraction(ratio, "drift ratio");
    const auto bound = static_cast<std::int64_t>(
        std::min<std::uint64_t>(floor_mul(domain_extent(geometry, domain), ratio), std::numeric_limits<std::int64_t>::max()));
    return {domain, ratio, rng.uniform_int(-bound, bound)};
}

void check_config(const EstfConfig& config) {
    check_fraction(config.c_istp, "c_istp");
    check_fraction(config.c_dst, "c_dst");
    check_fraction(config.r, "drift ratio r");
    if (config.d_dst == Domain::Polarity) throw InvalidArgument("d_dst must be a spatial or time domain");
}

EstfResult estf_traced(const EventStream& stream, const EstfConfig& config, Rng& rng) {
    check_config(config);
    EstfResult result;
    auto& draws = result.draws;

    draws.istp = draw_fragment(stream, config.c_istp, rng);
    EventStream inverted = istp(stream, draws.istp.fragment, config.d_istp);

    draws.dst = draw_fragment(inverted, config.c_dst, rng);
    draws.drift = draw_drift(stream.geometry(), config.d_dst, config.r, rng);
    result.stream = dst(inverted, draws.dst.fragment, draws.drift);
    return result;
}

EventStream event_drop(const EventStream& stream, const DropParams& params, Rng& rng) {
    const auto in = stream.events();
    switch (params.strategy) {
        case DropStrategy::Random: {
            check_fraction(params.fraction, "drop fraction");
            const std::uint64_t key = rng.next_u64();
            const double q = params.fraction;
            return {stream.geometry(), detail::compact_map(in, [&](std::size_t i, const Event& e) -> std::optional<Event> {
                        const double u = static_cast<double>(mix64(key + i) >> 11) * 0x1.0p-53;
                        if (u < q) return std::nullopt;
                        return e;
                    })};
        }
        case DropStrategy::TimeWindow: {
            if (params.t0 > params.t1) throw InvalidArgument("drop window must satisfy t0 <= t1");
            const auto w = fragment_in_window(stream, params.t0, params.t1);
            // [t0, t1) is half-open; peel off events sitting exactly on t1.
            std::size_t hi = w.end;
            while (hi > w.start && in[hi - 1].t >= params.t1) --hi;
            std::vector<Event> out;
            out.reserve(in.size() - (hi - w.start));
            out.insert(out.end(), in.begin(), in.begin() + static_cast<std::ptrdiff_t>(w.start));
            out.insert(out.end(), in.begin() + static_cast<std::ptrdiff_t>(hi), in.end());
            return {stream.geometry(), std::move(out)};
        }
        case DropStrategy::Area: {
            if (params.x0 > params.x1 || params.y0 > params.y1) throw InvalidArgument("drop area must satisfy x0 <= x1 and y0 <= y1");
            return {stream.geometry(), detail::compact_map(in, [&](std::size_t, const Event& e) -> std::optional<Event> {
                        if (e.x >= params.x0 && e.x < params.x1 && e.y >= params.y0 && e.y < params.y1) return std::nullopt;
                        return e;
                    })};
        }
    }
    return stream;
}

EventStream flip_horizontal(const EventStream& stream) {
    const auto in = stream.events();
    std::vector<Event> out(in.begin(), in.end());
    const std::uint32_t last = stream.geometry().width - 1;
    detail::parallel_for(out.size(), [&](std::size_t i) { out[i].x = static_cast<std::uint16_t>(last - out[i].x); });
    return {stream.geometry(), std::move(out)};
}

EventStream translate(const EventStream& stream, std::int64_t dx, std::int64_t dy) {
    const auto& g = stream.geometry();
    if (dx <= -static_cast<std::int64_t>(g.width) || dx >= static_cast<std::int64_t>(g.width) ||
        dy <= -static_cast<std::int64_t>(g.height) || dy >= static_cast<std::int64_t>(g.height)) {
        throw InvalidArgument("translation must satisfy |dx| < width and |dy| < height");
    }
    if (dx == 0 && dy == 0) return stream;
    return {g, detail::compact_map(stream.events(), [&](std::size_t, const Event& e) -> std::optional<Event> {
                const std::int64_t x = static_cast<std::int64_t>(e.x) + dx;
                const std::int64_t y = static_cast<std::int64_t>(e.y) + dy;
                if (x < 0 || y < 0 || x >= static_cast<std::int64_t>(g.width) || y >= static_cast<std::int64_t>(g.height)) {
                    return std::nullopt;
                }
                Event o = e;
                o.x = static_cast<std::uint16_t>(x);
                o.y = static_cast<std::uint16_t>(y);
                return o;
            })};
}

}  // namespace estf
