#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "commands.hpp"
#include "options.hpp"

namespace estf::cli {

struct AugmentFlags {
    std::vector<std::string> inputs;
    std::string output;
    OpFlags op;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string in_format, out_format;
    GeometryFlags geometry;
};

void add_augment_flags(CLI::App& app, AugmentFlags& flags);
int cmd_augment(const AugmentFlags& flags, std::ostream& out, std::ostream& err);

}  // namespace estf::cli
