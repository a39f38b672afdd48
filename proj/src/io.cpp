#include "estf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>

#include "estf/error.hpp"
#include "parallel.hpp"

namespace estf::io {

namespace {

template <class T>
T load_le(const std::uint8_t* p) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
    return v;
}

template <class T>
void store_le(std::uint8_t*& p, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) *p++ = static_cast<std::uint8_t>(v >> (8 * i));
}

SensorGeometry infer_geometry(std::span<const Event> events) {
    SensorGeometry g{1, 1, 0};
    for (const Event& e : events) {
        g.width = std::max<std::uint32_t>(g.width, e.x + 1u);
        g.height = std::max<std::uint32_t>(g.height, e.y + 1u);
        g.t_max = std::max(g.t_max, e.t);
    }
    return g;
}

// Bounds-checks against `g`, reporting the first offender's byte offset.
void check_bounds(std::span<const Event> events, const SensorGeometry& g,
                  const std::function<std::uint64_t(std::size_t)>& offset_of) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!g.contains(events[i])) {
            throw FormatError(offset_of(i), "event outside geometry " + std::to_string(g.width) + "x" +
                                                std::to_string(g.height) + ", t_max " + std::to_string(g.t_max));
        }
    }
}

EventStream finish(std::vector<Event> events, std::optional<SensorGeometry> geometry,
                   const std::function<std::uint64_t(std::size_t)>& offset_of) {
    SensorGeometry g;
    if (geometry) {
        if (geometry->width < 1 || geometry->height < 1) throw FormatError(0, "geometry must be at least 1x1");
        check_bounds(events, *geometry, offset_of);
        g = *geometry;
    } else {
        g = infer_geometry(events);
    }
    return {g, sort_stable(std::move(events))};
}

template <class T>
bool parse_uint(std::string_view s, T& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_polarity(std::string_view s, std::uint8_t& p) {
    if (s == "1" || s == "+1") p = 1;
    else if (s == "0" || s == "-1") p = 0;
    else return false;
    return true;
}

std::optional<SensorGeometry> parse_geometry_comment(std::string_view line) {
    unsigned long long w = 0, h = 0, t = 0;
    char tail = 0;
    const std::string copy(line);
    if (std::sscanf(copy.c_str(), "# width=%llu height=%llu t_max=%llu%c", &w, &h, &t, &tail) != 3) return std::nullopt;
    if (w < 1 || h < 1 || w > 65536 || h > 65536) return std::nullopt;
    return SensorGeometry{static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h), t};
}

EventStream decode_csv(std::span<const std::uint8_t> bytes, const ReadOptions& options) {
    const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    std::vector<Event> events;
    std::vector<std::uint64_t> offsets;
    std::optional<SensorGeometry> declared;
    bool first_line = true;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        const std::uint64_t at = pos;
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const bool was_first = first_line;
        first_line = false;
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (was_first) declared = parse_geometry_comment(line);
            continue;
        }

        std::string_view field[4];
        std::size_t start = 0;
        for (int k = 0; k < 4; ++k) {
            const std::size_t comma = k < 3 ? line.find(',', start) : line.size();
            if (comma == std::string_view::npos) throw FormatError(at, "CSV record needs 4 fields `x,y,t,p`");
            field[k] = line.substr(start, comma - start);
            start = comma + 1;
        }
        if (field[3].find(',') != std::string_view::npos) throw FormatError(at, "CSV record has more than 4 fields");

        std::uint16_t x = 0, y = 0;
        std::uint64_t t = 0;
        std::uint8_t p = 0;
        if (!parse_uint(field[0], x)) throw FormatError(at, "CSV x is not an integer in [0, 65535]");
        if (!parse_uint(field[1], y)) throw FormatError(at, "CSV y is not an integer in [0, 65535]");
        if (!parse_uint(field[2], t)) throw FormatError(at, "CSV t is not a non-negative 64-bit integer");
        if (!parse_polarity(field[3], p)) throw FormatError(at, "CSV p must be one of 0, 1, -1, +1");
        if (options.swap_xy) std::swap(x, y);
        events.emplace_back(x, y, t, p);
        offsets.push_back(at);
    }

    const auto geometry = options.geometry ? options.geometry : declared;
    return finish(std::move(events), geometry, [&](std::size_t i) { return offsets[i]; });
}

EventStream decode_evt1(std::span<const std::uint8_t> bytes, const ReadOptions& options) {
    if (bytes.size() < kEvt1HeaderSize) throw FormatError(0, "EVT1 header truncated");
    if (std::memcmp(bytes.data(), "EVT1", 4) != 0) throw FormatError(0, "missing EVT1 magic");
    const std::uint8_t* b = bytes.data();
    SensorGeometry g{load_le<std::uint16_t>(b + 4), load_le<std::uint16_t>(b + 6), load_le<std::uint64_t>(b + 8)};
    const std::uint64_t count = load_le<std::uint64_t>(b + 16);
    if (g.width < 1 || g.height < 1) throw FormatError(4, "EVT1 geometry must be at least 1x1");

    const std::uint64_t room = (bytes.size() - kEvt1HeaderSize) / kEvt1RecordSize;
    if (count > room) throw FormatError(kEvt1HeaderSize + room * kEvt1RecordSize, "EVT1 record truncated");
    const std::uint64_t used = kEvt1HeaderSize + count * kEvt1RecordSize;
    if (used != bytes.size()) throw FormatError(used, "trailing bytes after the last EVT1 record");

    const auto offset_of = [](std::size_t i) { return kEvt1HeaderSize + i * kEvt1RecordSize; };
    std::vector<Event> events(count);
    detail::parallel_for(count, [&](std::size_t i) {
        const std::uint8_t* r = b + offset_of(i);
        events[i] = Event(load_le<std::uint16_t>(r), load_le<std::uint16_t>(r + 2), load_le<std::uint64_t>(r + 4), r[12]);
        if (options.swap_xy) std::swap(events[i].x, events[i].y);
    });
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].p > 1) throw FormatError(offset_of(i) + 12, "EVT1 polarity byte must be 0 or 1");
    }
    return finish(std::move(events), options.geometry ? options.geometry : std::optional(g), offset_of);
}

EventStream decode_atis(std::span<const std::uint8_t> bytes, const ReadOptions& options) {
    const std::size_t count = bytes.size() / kAtisRecordSize;
    if (count * kAtisRecordSize != bytes.size()) throw FormatError(count * kAtisRecordSize, "ATIS_BIN record truncated");

    const auto offset_of = [](std::size_t i) { return static_cast<std::uint64_t>(i) * kAtisRecordSize; };
    std::vector<Event> events(count);
    const std::uint8_t* b = bytes.data();
    detail::parallel_for(count, [&](std::size_t i) {
        const std::uint8_t* r = b + offset_of(i);
        const std::uint32_t word = static_cast<std::uint32_t>(r[2]) << 16 | static_cast<std::uint32_t>(r[3]) << 8 | r[4];
        std::uint16_t x = r[0], y = r[1];
        if (options.swap_xy) std::swap(x, y);
        events[i] = Event(x, y, word & kAtisMaxTime, static_cast<std::uint8_t>(word >> 23));
    });
    for (std::size_t i = 1; i < count; ++i) {
        if (events[i].t < events[i - 1].t) throw FormatError(offset_of(i), "ATIS_BIN timestamps must not decrease");
    }
    return finish(std::move(events), options.geometry, offset_of);
}

std::vector<std::uint8_t> encode_csv(const EventStream& stream) {
    const auto& g = stream.geometry();
    std::string out = "# width=" + std::to_string(g.width) + " height=" + std::to_string(g.height) +
                      " t_max=" + std::to_string(g.t_max) + "\n";
    out.reserve(out.size() + stream.size() * 20);
    const auto put = [&out](auto v) {
        char digits[24];
        const auto end = std::to_chars(digits, digits + sizeof digits, v).ptr;
        out.append(digits, end);
    };
    for (const Event& e : stream.events()) {
        put(e.x);
        out.push_back(',');
        put(e.y);
        out.push_back(',');
        put(e.t);
        out.push_back(',');
        out.push_back(e.p ? '1' : '0');
        out.push_back('\n');
    }
    return {out.begin(), out.end()};
}

std::vector<std::uint8_t> encode_evt1(const EventStream& stream) {
    const auto& g = stream.geometry();
    if (g.width > 0xFFFF || g.height > 0xFFFF) throw InvalidArgument("EVT1 stores width and height as 16-bit values");
    if (g.t_max > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw InvalidArgument("EVT1 capacity exceeded: t_max > 2^63-1");
    }
    std::vector<std::uint8_t> out(kEvt1HeaderSize + stream.size() * kEvt1RecordSize);
    std::uint8_t* p = out.data();
    std::memcpy(p, "EVT1", 4);
    p += 4;
    store_le<std::uint16_t>(p, static_cast<std::uint16_t>(g.width));
    store_le<std::uint16_t>(p, static_cast<std::uint16_t>(g.height));
    store_le<std::uint64_t>(p, g.t_max);
    store_le<std::uint64_t>(p, stream.size());

    const auto events = stream.events();
    for (const Event& e : events) {
        if (e.t > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
            throw InvalidArgument("EVT1 capacity exceeded: t > 2^63-1");
        }
    }
    std::uint8_t* base = p;
    detail::parallel_for(events.size(), [&](std::size_t i) {
        std::uint8_t* r = base + i * kEvt1RecordSize;
        store_le<std::uint16_t>(r, events[i].x);
        store_le<std::uint16_t>(r, events[i].y);
        store_le<std::uint64_t>(r, events[i].t);
        *r = events[i].p;
    });
    return out;
}

std::vector<std::uint8_t> encode_atis(const EventStream& stream) {
    std::vector<std::uint8_t> out(stream.size() * kAtisRecordSize);
    std::size_t w = 0;
    for (const Event& e : stream.events()) {
        if (e.x > 0xFF || e.y > 0xFF) throw InvalidArgument("ATIS_BIN stores x and y as single bytes");
        if (e.t > kAtisMaxTime) throw InvalidArgument("ATIS_BIN timestamps are limited to 23 bits");
        const std::uint32_t word = static_cast<std::uint32_t>(e.p) << 23 | static_cast<std::uint32_t>(e.t);
        out[w++] = static_cast<std::uint8_t>(e.x);
        out[w++] = static_cast<std::uint8_t>(e.y);
        out[w++] = static_cast<std::uint8_t>(word >> 16);
        out[w++] = static_cast<std::uint8_t>(word >> 8);
        out[w++] = static_cast<std::uint8_t>(word);
    }
    return out;
}

}  // namespace

std::string_view to_string(Format f) {
    switch (f) {
        case Format::Csv: return "csv";
        case Format::Evt1: return "evt1";
        case Format::AtisBin: return "atis";
    }
    return "?";
}

std::optional<Format> parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "evt1") return Format::Evt1;
    if (name == "atis" || name == "atis_bin" || name == "bin") return Format::AtisBin;
    return std::nullopt;
}

std::optional<Format> format_for_path(std::string_view path) {
    const std::string ext = std::filesystem::path(path).extension().string();
    if (ext == ".csv") return Format::Csv;
    if (ext == ".evt1") return Format::Evt1;
    if (ext == ".bin" || ext == ".atis") return Format::AtisBin;
    return std::nullopt;
}

EventStream decode(std::span<const std::uint8_t> bytes, Format format, const ReadOptions& options) {
    switch (format) {
        case Format::Csv: return decode_csv(bytes, options);
        case Format::Evt1: return decode_evt1(bytes, options);
        case Format::AtisBin: return decode_atis(bytes, options);
    }
    throw InvalidArgument("unknown format");
}

std::vector<std::uint8_t> encode(const EventStream& stream, Format format) {
    switch (format) {
        case Format::Csv: return encode_csv(stream);
        case Format::Evt1: return encode_evt1(stream);
        case Format::AtisBin: return encode_atis(stream);
    }
    throw InvalidArgument("unknown format");
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw IoError("cannot open " + path);
    const auto size = in.tellg();
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    in.seekg(0);
    if (!in.read(reinterpret_cast<char*>(bytes.data()), size)) throw IoError("cannot read " + path);
    return bytes;
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path);
}

EventStream read(const std::string& path, Format format, const ReadOptions& options) {
    return decode(read_bytes(path), format, options);
}

void write(const EventStream& stream, const std::string& path, Format format) {
    write_bytes(path, encode(stream, format));
}

}  // namespace estf::io
