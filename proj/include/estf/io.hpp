#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "estf/event.hpp"

namespace estf::io {

/// On-disk event encodings.
///
/// CSV       one `x,y,t,p` line per event, LF newlines; p in {0,1} or
///           {-1,+1}. `#` lines are comments, except that a first line of the
///           form `# width=W height=H t_max=T` declares the geometry.
/// EVT1      `EVT1`, width:u16, height:u16, t_max:u64, count:u64, then count
///           records x:u16 y:u16 t:u64 p:u8. Little-endian, no padding.
/// ATIS_BIN  5 bytes per event: x, y, then a big-endian 24-bit word whose
///           top bit is the polarity and low 23 bits the timestamp in us.
enum class Format { Csv, Evt1, AtisBin };

std::string_view to_string(Format f);
std::optional<Format> parse_format(std::string_view name);
/// Guess from the extension: .csv, .evt1, .bin / .atis.
std::optional<Format> format_for_path(std::string_view path);

struct ReadOptions {
    /// Overrides any geometry stored in or inferred from the file; events
    /// outside it are an error.
    std::optional<SensorGeometry> geometry;
    /// Exchange the x and y fields on read (ATIS tools disagree on order).
    bool swap_xy = false;
};

inline constexpr std::size_t kEvt1HeaderSize = 24;
inline constexpr std::size_t kEvt1RecordSize = 13;
inline constexpr std::size_t kAtisRecordSize = 5;
inline constexpr std::uint64_t kAtisMaxTime = (1u << 23) - 1;

/// Parses a whole file image. Without a geometry from the options or the
/// file, geometry is (max_x + 1, max_y + 1, max_t). Output is stably sorted.
/// Throws FormatError carrying the byte offset of the offending record.
EventStream decode(std::span<const std::uint8_t> bytes, Format format, const ReadOptions& options = {});

/// Throws InvalidArgument when the stream does not fit the format
/// (EVT1: width/height > 65535 or t > 2^63-1; ATIS_BIN: x/y > 255 or t >= 2^23).
std::vector<std::uint8_t> encode(const EventStream& stream, Format format);

EventStream read(const std::string& path, Format format, const ReadOptions& options = {});
void write(const EventStream& stream, const std::string& path, Format format);

std::vector<std::uint8_t> read_bytes(const std::string& path);
void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace estf::io
