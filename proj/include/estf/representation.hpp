#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "estf/event.hpp"

namespace estf {

/// Dense event counts laid out as (bin, channel, row, column); channel is
/// the polarity.
class VoxelGrid {
public:
    static constexpr std::uint32_t kChannels = 2;

    VoxelGrid(std::uint32_t bins_t, std::uint32_t height, std::uint32_t width)
        : bins_t_(bins_t), height_(height), width_(width),
          counts_(static_cast<std::size_t>(bins_t) * kChannels * height * width, 0) {}

    std::uint32_t bins_t() const noexcept { return bins_t_; }
    std::uint32_t height() const noexcept { return height_; }
    std::uint32_t width() const noexcept { return width_; }

    std::size_t index(std::uint32_t bin, std::uint32_t channel, std::uint32_t row, std::uint32_t col) const noexcept {
        return ((static_cast<std::size_t>(bin) * kChannels + channel) * height_ + row) * width_ + col;
    }
    std::uint32_t at(std::uint32_t bin, std::uint32_t channel, std::uint32_t row, std::uint32_t col) const {
        return counts_[index(bin, channel, row, col)];
    }

    std::span<const std::uint32_t> counts() const noexcept { return counts_; }
    std::span<std::uint32_t> counts() noexcept { return counts_; }
    std::uint64_t total() const noexcept;

    friend bool operator==(const VoxelGrid&, const VoxelGrid&) = default;

private:
    std::uint32_t bins_t_, height_, width_;
    std::vector<std::uint32_t> counts_;
};

/// Temporal bin of an event: floor(t * bins_t / (t_max + 1)).
std::uint32_t time_bin(std::uint64_t t, std::uint64_t t_max, std::uint32_t bins_t) noexcept;

/// Counts every event into its (bin, polarity, y, x) cell. Throws
/// InvalidArgument when bins_t == 0.
VoxelGrid accumulate(const EventStream& stream, std::uint32_t bins_t);

/// `EVG1` magic, then bins_t, height, width, then all counts; every field
/// an unsigned 32-bit little-endian integer.
std::vector<std::uint8_t> encode_grid(const VoxelGrid& grid);
VoxelGrid decode_grid(std::span<const std::uint8_t> bytes);
void write_grid(const VoxelGrid& grid, const std::string& path);

/// Binary PGM (P5) of one bin: mid-gray background, ON counts brighten,
/// OFF counts darken, scaled by the bin's largest |on - off|.
std::string encode_pgm(const VoxelGrid& grid, std::uint32_t bin);

}  // namespace estf
