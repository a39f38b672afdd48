#include "options.hpp"

#include <charconv>
#include <vector>

#include "estf/error.hpp"

namespace estf::cli {

namespace {

std::vector<std::uint64_t> split_uints(const std::string& text, std::size_t want, const char* flag) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t colon = text.find(':', pos);
        const std::string_view field = std::string_view(text).substr(pos, colon == std::string::npos ? std::string::npos : colon - pos);
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) break;
        out.push_back(v);
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (out.size() != want) {
        throw ConfigError(std::string(flag) + " expects " + std::to_string(want) + " colon-separated integers, got '" + text + "'");
    }
    return out;
}

Domain require_domain(const std::string& name, const char* flag) {
    const auto d = parse_domain(name);
    if (!d) throw ConfigError(std::string(flag) + ": unknown domain '" + name + "' (x, y, time, polarity)");
    return *d;
}

nlohmann::ordered_json fragment_json(const FragmentDraw& d) {
    return {{"begin", d.begin}, {"start", d.fragment.start}, {"end", d.fragment.end}};
}

}  // namespace

void add_op_flags(CLI::App& app, OpFlags& f) {
    app.add_option("--c-istp", f.c_istp, "inversion fragment ratio in [0, 1]");
    app.add_option("--c-dst", f.c_dst, "drift fragment ratio in [0, 1]");
    app.add_option("--d-istp", f.d_istp, "inversion domain: x, y, time, polarity");
    app.add_option("--d-dst", f.d_dst, "drift domain: x, y, time");
    app.add_option("--r", f.r, "drift ratio; distance bound is floor(r * extent)");
    app.add_option("--drop-strategy", f.drop_strategy, "random, window, area");
    app.add_option("--drop-fraction", f.drop_fraction, "per-event drop probability (random)");
    app.add_option("--drop-window", f.drop_window, "t0:t1, drops t in [t0, t1)");
    app.add_option("--drop-area", f.drop_area, "x0:y0:x1:y1, drops [x0, x1) x [y0, y1)");
    app.add_option("--dx", f.dx, "translate: x shift");
    app.add_option("--dy", f.dy, "translate: y shift");
}

AugmentSpec build_spec(const OpFlags& f) {
    AugmentSpec spec;
    const auto op = parse_op(f.op);
    if (!op) throw ConfigError("unknown op '" + f.op + "' (none, estf, istp, dst, drop, flip, translate)");
    spec.op = *op;

    spec.estf.c_istp = f.c_istp;
    spec.estf.c_dst = f.c_dst;
    spec.estf.d_istp = require_domain(f.d_istp, "--d-istp");
    spec.estf.d_dst = require_domain(f.d_dst, "--d-dst");
    spec.estf.r = f.r;
    if (spec.op == OpKind::Estf || spec.op == OpKind::Istp || spec.op == OpKind::Dst) {
        try {
            check_config(spec.estf);
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    }

    if (spec.op == OpKind::EventDrop) {
        if (f.drop_strategy == "random") {
            spec.drop.strategy = DropStrategy::Random;
            if (!(f.drop_fraction >= 0.0 && f.drop_fraction <= 1.0)) throw ConfigError("--drop-fraction must lie in [0, 1]");
            spec.drop.fraction = f.drop_fraction;
        } else if (f.drop_strategy == "window") {
            spec.drop.strategy = DropStrategy::TimeWindow;
            const auto v = split_uints(f.drop_window, 2, "--drop-window");
            spec.drop.t0 = v[0];
            spec.drop.t1 = v[1];
        } else if (f.drop_strategy == "area") {
            spec.drop.strategy = DropStrategy::Area;
            const auto v = split_uints(f.drop_area, 4, "--drop-area");
            for (std::uint64_t c : v) {
                if (c > 0xFFFFFFFFu) throw ConfigError("--drop-area coordinates must fit in 32 bits");
            }
            spec.drop.x0 = static_cast<std::uint32_t>(v[0]);
            spec.drop.y0 = static_cast<std::uint32_t>(v[1]);
            spec.drop.x1 = static_cast<std::uint32_t>(v[2]);
            spec.drop.y1 = static_cast<std::uint32_t>(v[3]);
        } else {
            throw ConfigError("unknown --drop-strategy '" + f.drop_strategy + "' (random, window, area)");
        }
    }
    spec.dx = f.dx;
    spec.dy = f.dy;
    return spec;
}

nlohmann::ordered_json spec_params(const AugmentSpec& spec) {
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    const auto& e = spec.estf;
    switch (spec.op) {
        case OpKind::None:
        case OpKind::Flip:
            break;
        case OpKind::Estf:
            p = {{"c_istp", e.c_istp}, {"c_dst", e.c_dst}, {"d_istp", to_string(e.d_istp)},
                 {"d_dst", to_string(e.d_dst)}, {"r", e.r}};
            break;
        case OpKind::Istp:
            p = {{"c_istp", e.c_istp}, {"d_istp", to_string(e.d_istp)}};
            break;
        case OpKind::Dst:
            p = {{"c_dst", e.c_dst}, {"d_dst", to_string(e.d_dst)}, {"r", e.r}};
            break;
        case OpKind::EventDrop:
            switch (spec.drop.strategy) {
                case DropStrategy::Random: p = {{"strategy", "random"}, {"fraction", spec.drop.fraction}}; break;
                case DropStrategy::TimeWindow: p = {{"strategy", "window"}, {"t0", spec.drop.t0}, {"t1", spec.drop.t1}}; break;
                case DropStrategy::Area:
                    p = {{"strategy", "area"}, {"x0", spec.drop.x0}, {"y0", spec.drop.y0}, {"x1", spec.drop.x1}, {"y1", spec.drop.y1}};
                    break;
            }
            break;
        case OpKind::Translate:
            p = {{"dx", spec.dx}, {"dy", spec.dy}};
            break;
    }
    return p;
}

nlohmann::ordered_json draws_json(const AugmentDraws& d) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    if (d.istp) j["istp"] = fragment_json(*d.istp);
    if (d.dst) j["dst"] = fragment_json(*d.dst);
    if (d.drift) j["drift"] = {{"domain", to_string(d.drift->domain)}, {"ratio", d.drift->ratio}, {"distance", d.drift->distance}};
    return j;
}

void add_geometry_flags(CLI::App& app, GeometryFlags& f) {
    app.add_option("--width", f.width, "sensor width (geometry hint)");
    app.add_option("--height", f.height, "sensor height (geometry hint)");
    app.add_option("--t-max", f.t_max, "largest timestamp in us (geometry hint)");
    app.add_flag("--swap-xy", f.swap_xy, "exchange x and y when reading");
}

io::ReadOptions read_options(const GeometryFlags& f) {
    io::ReadOptions o;
    o.swap_xy = f.swap_xy;
    const int given = f.width.has_value() + f.height.has_value() + f.t_max.has_value();
    if (given == 3) {
        if (*f.width == 0 || *f.height == 0) throw ConfigError("--width and --height must be at least 1");
        o.geometry = SensorGeometry{*f.width, *f.height, *f.t_max};
    } else if (given != 0) {
        throw ConfigError("--width, --height and --t-max must be given together");
    }
    return o;
}

io::Format require_format(const std::string& name) {
    const auto f = io::parse_format(name);
    if (!f) throw ConfigError("unknown format '" + name + "' (csv, evt1, atis)");
    return *f;
}

io::Format resolve_format(const std::string& explicit_name, const std::string& path) {
    if (!explicit_name.empty()) return require_format(explicit_name);
    const auto f = io::format_for_path(path);
    if (!f) throw ConfigError("cannot tell the format of '" + path + "' from its extension; pass a format flag");
    return *f;
}

}  // namespace estf::cli
