#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace estf {

/// One brightness-change record. Polarity is always 0 (OFF) or 1 (ON);
/// the signed {-1,+1} encoding only exists at file boundaries.
///
/// Members are laid out t-first so the struct packs into 16 bytes.
struct Event {
    std::uint64_t t = 0;  // microseconds
    std::uint16_t x = 0;
    std::uint16_t y = 0;
    std::uint8_t p = 0;

    constexpr Event() = default;
    constexpr Event(std::uint16_t x_, std::uint16_t y_, std::uint64_t t_, std::uint8_t p_)
        : t(t_), x(x_), y(y_), p(p_) {}

    friend constexpr bool operator==(const Event&, const Event&) = default;
};

static_assert(sizeof(Event) == 16);

/// Spatial resolution plus the largest admissible timestamp.
struct SensorGeometry {
    std::uint32_t width = 1;
    std::uint32_t height = 1;
    std::uint64_t t_max = 0;

    friend constexpr bool operator==(const SensorGeometry&, const SensorGeometry&) = default;

    constexpr bool contains(const Event& e) const noexcept {
        return e.x < width && e.y < height && e.t <= t_max;
    }
};

/// Half-open index range [start, end) into a time-sorted stream.
struct FragmentSpec {
    std::size_t start = 0;
    std::size_t end = 0;

    constexpr std::size_t size() const noexcept { return end - start; }
    constexpr bool empty() const noexcept { return end == start; }
    constexpr bool contains(std::size_t i) const noexcept { return i >= start && i < end; }

    friend constexpr bool operator==(const FragmentSpec&, const FragmentSpec&) = default;
};

/// A time-sorted event sequence bound to its sensor geometry.
///
/// Immutable after construction. The plain constructor stores its inputs
/// as given so that `validate` can diagnose broken streams; use `checked`
/// to obtain a stream that is guaranteed sorted and in bounds.
class EventStream {
public:
    EventStream() = default;
    EventStream(SensorGeometry geometry, std::vector<Event> events)
        : geometry_(geometry), events_(std::move(events)) {}

    /// Stably sorts `events` by time and throws InvalidArgument on the
    /// first remaining violation.
    static EventStream checked(SensorGeometry geometry, std::vector<Event> events);

    const SensorGeometry& geometry() const noexcept { return geometry_; }
    std::span<const Event> events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    bool empty() const noexcept { return events_.empty(); }
    const Event& operator[](std::size_t i) const { return events_[i]; }

    friend bool operator==(const EventStream&, const EventStream&) = default;

private:
    SensorGeometry geometry_;
    std::vector<Event> events_;
};

enum class ViolationRule {
    BadGeometry,
    Unsorted,
    XOutOfBounds,
    YOutOfBounds,
    TOutOfBounds,
    BadPolarity,
};

struct Violation {
    std::optional<std::size_t> index;  // empty for geometry-level violations
    ViolationRule rule;

    std::string describe() const;
    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every broken invariant of `stream`, in index order. Empty means valid.
std::vector<Violation> validate(const EventStream& stream);

/// Stable sort by timestamp; equal timestamps keep their input order.
std::vector<Event> sort_stable(std::vector<Event> events);

}  // namespace estf
