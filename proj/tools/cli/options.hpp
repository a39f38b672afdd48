#pragma once

// Flag plumbing shared by the subcommands.

#include <CLI11.hpp>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>

#include "estf/augment.hpp"
#include "estf/io.hpp"

namespace estf::cli {

/// Bad flags or unusable inputs, detected before any output is written.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OpFlags {
    std::string op;
    double c_istp = 0.25;
    double c_dst = 0.25;
    std::string d_istp = "polarity";
    std::string d_dst = "time";
    double r = 0.1;
    std::string drop_strategy = "random";
    double drop_fraction = 0.1;
    std::string drop_window;  // t0:t1
    std::string drop_area;    // x0:y0:x1:y1
    std::int64_t dx = 0;
    std::int64_t dy = 0;
};

void add_op_flags(CLI::App& app, OpFlags& flags);
AugmentSpec build_spec(const OpFlags& flags);
nlohmann::ordered_json spec_params(const AugmentSpec& spec);
nlohmann::ordered_json draws_json(const AugmentDraws& draws);

struct GeometryFlags {
    std::optional<std::uint32_t> width, height;
    std::optional<std::uint64_t> t_max;
    bool swap_xy = false;
};

void add_geometry_flags(CLI::App& app, GeometryFlags& flags);
io::ReadOptions read_options(const GeometryFlags& flags);

io::Format require_format(const std::string& name);
/// Explicit --format wins; otherwise the file extension decides.
io::Format resolve_format(const std::string& explicit_name, const std::string& path);

}  // namespace estf::cli
