#include "estf/event.hpp"

#include <algorithm>

#include "estf/error.hpp"

namespace estf {

namespace {

const char* rule_name(ViolationRule rule) {
    switch (rule) {
        case ViolationRule::BadGeometry: return "geometry must have width >= 1 and height >= 1";
        case ViolationRule::Unsorted: return "timestamp smaller than its predecessor";
        case ViolationRule::XOutOfBounds: return "x out of bounds";
        case ViolationRule::YOutOfBounds: return "y out of bounds";
        case ViolationRule::TOutOfBounds: return "t exceeds t_max";
        case ViolationRule::BadPolarity: return "polarity not in {0, 1}";
    }
    return "unknown";
}

}  // namespace

std::string Violation::describe() const {
    std::string out = rule_name(rule);
    if (index) out += " at index " + std::to_string(*index);
    return out;
}

std::vector<Violation> validate(const EventStream& stream) {
    std::vector<Violation> out;
    const auto& g = stream.geometry();
    if (g.width < 1 || g.height < 1) out.push_back({std::nullopt, ViolationRule::BadGeometry});

    const auto events = stream.events();
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        if (i > 0 && e.t < events[i - 1].t) out.push_back({i, ViolationRule::Unsorted});
        if (e.x >= g.width) out.push_back({i, ViolationRule::XOutOfBounds});
        if (e.y >= g.height) out.push_back({i, ViolationRule::YOutOfBounds});
        if (e.t > g.t_max) out.push_back({i, ViolationRule::TOutOfBounds});
        if (e.p > 1) out.push_back({i, ViolationRule::BadPolarity});
    }
    return out;
}

std::vector<Event> sort_stable(std::vector<Event> events) {
    // Recordings are almost always sorted already.
    if (std::is_sorted(events.begin(), events.end(),
                       [](const Event& a, const Event& b) { return a.t < b.t; })) {
        return events;
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
    return events;
}

EventStream EventStream::checked(SensorGeometry geometry, std::vector<Event> events) {
    EventStream stream(geometry, sort_stable(std::move(events)));
    const auto violations = validate(stream);
    if (!violations.empty()) throw InvalidArgument("invalid event stream: " + violations.front().describe());
    return stream;
}

}  // namespace estf
