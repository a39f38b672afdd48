#include "estf/representation.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>

#include "estf/error.hpp"
#include "parallel.hpp"

namespace estf {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
    return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
           static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

}  // namespace

std::uint64_t VoxelGrid::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint32_t time_bin(std::uint64_t t, std::uint64_t t_max, std::uint32_t bins_t) noexcept {
    const auto num = static_cast<unsigned __int128>(t) * bins_t;
    const auto den = static_cast<unsigned __int128>(t_max) + 1;
    return static_cast<std::uint32_t>(num / den);
}

VoxelGrid accumulate(const EventStream& stream, std::uint32_t bins_t) {
    if (bins_t == 0) throw InvalidArgument("bins_t must be at least 1");
    const auto& g = stream.geometry();
    VoxelGrid grid(bins_t, g.height, g.width);
    auto cells = grid.counts();
    const auto events = stream.events();

    // Integer increments commute, so atomics keep the result thread-count independent.
    detail::parallel_for(events.size(), [&](std::size_t i) {
        const Event& e = events[i];
        const std::size_t cell = grid.index(time_bin(e.t, g.t_max, bins_t), e.p, e.y, e.x);
#pragma omp atomic update
        cells[cell] += 1;
    });
    return grid;
}

std::vector<std::uint8_t> encode_grid(const VoxelGrid& grid) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + grid.counts().size() * 4);
    for (char c : {'E', 'V', 'G', '1'}) out.push_back(static_cast<std::uint8_t>(c));
    put_u32(out, grid.bins_t());
    put_u32(out, grid.height());
    put_u32(out, grid.width());
    for (std::uint32_t c : grid.counts()) put_u32(out, c);
    return out;
}

VoxelGrid decode_grid(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 16 || std::memcmp(bytes.data(), "EVG1", 4) != 0) throw FormatError(0, "missing EVG1 header");
    const std::uint32_t bins = get_u32(bytes, 4), height = get_u32(bytes, 8), width = get_u32(bytes, 12);
    // Check the size before allocating; a corrupt header could ask for 2^98 cells.
    const auto cell_count = static_cast<unsigned __int128>(bins) * VoxelGrid::kChannels * height * width;
    if (cell_count != (bytes.size() - 16) / 4 || (bytes.size() - 16) % 4 != 0) {
        throw FormatError(16, "EVG1 payload size does not match its header");
    }
    VoxelGrid grid(bins, height, width);
    auto cells = grid.counts();
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = get_u32(bytes, 16 + 4 * i);
    return grid;
}

void write_grid(const VoxelGrid& grid, const std::string& path) {
    const auto bytes = encode_grid(grid);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path);
}

std::string encode_pgm(const VoxelGrid& grid, std::uint32_t bin) {
    if (bin >= grid.bins_t()) throw InvalidArgument("bin index out of range");
    const std::uint32_t w = grid.width(), h = grid.height();
    std::vector<std::int64_t> diff(static_cast<std::size_t>(w) * h);
    std::int64_t peak = 0;
    for (std::uint32_t r = 0; r < h; ++r) {
        for (std::uint32_t c = 0; c < w; ++c) {
            const std::int64_t d = static_cast<std::int64_t>(grid.at(bin, 1, r, c)) - grid.at(bin, 0, r, c);
            diff[static_cast<std::size_t>(r) * w + c] = d;
            peak = std::max(peak, d < 0 ? -d : d);
        }
    }
    std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + diff.size());
    for (std::int64_t d : diff) {
        const std::int64_t v = peak == 0 ? 128 : 128 + (d * 127) / peak;
        out.push_back(static_cast<char>(std::clamp<std::int64_t>(v, 0, 255)));
    }
    return out;
}

}  // namespace estf
