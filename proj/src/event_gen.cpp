#include "estf/event_gen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "estf/error.hpp"

namespace estf {

namespace {

constexpr double kLevelSlack = 1e-12;
// Crossing offsets this close below an integer are treated as landing on it.
constexpr double kTimeSnap = 1e-9;

void check_signal(const BrightnessSignal& signal) {
    for (std::size_t i = 1; i < signal.samples.size(); ++i) {
        if (signal.samples[i].t <= signal.samples[i - 1].t) {
            throw InvalidArgument("brightness samples must have strictly increasing timestamps (sample " +
                                  std::to_string(i) + ")");
        }
    }
}

void check_model(const SensorModel& model) {
    if (!(model.threshold > 0.0)) throw InvalidArgument("contrast threshold must be positive");
}

void check_pixel(const BrightnessSignal& signal, const SensorGeometry& g) {
    check_signal(signal);
    if (signal.x >= g.width || signal.y >= g.height) throw InvalidArgument("signal pixel outside the sensor");
    if (!signal.samples.empty() && signal.samples.back().t > g.t_max) {
        throw InvalidArgument("signal extends past the sensor t_max");
    }
}

std::uint64_t floor_offset(double off) {
    const double up = std::ceil(off);
    if (up - off < kTimeSnap) return static_cast<std::uint64_t>(up);
    return static_cast<std::uint64_t>(std::floor(off));
}

// Per-pixel generation without geometry checks.
std::vector<Event> pixel_events(const BrightnessSignal& signal, double threshold, std::uint64_t refractory) {
    std::vector<Event> out;
    const auto& s = signal.samples;
    if (s.size() < 2) return out;

    double ref = s.front().level;
    // Absolute end of the active refractory hold, if any: hold_base + hold_off.
    bool holding = false;
    std::uint64_t hold_base = 0;
    double hold_off = 0.0;

    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        const BrightnessSample& a = s[k];
        const BrightnessSample& b = s[k + 1];
        const double dt = static_cast<double>(b.t - a.t);
        const double rise = b.level - a.level;

        double from = 0.0;  // scan offset within the segment
        if (holding) {
            const double rel = static_cast<double>(hold_base) - static_cast<double>(a.t) + hold_off;
            if (rel >= dt) continue;
            holding = false;
            from = std::max(0.0, rel);
            ref = a.level + rise * from / dt;
        }
        if (rise == 0.0) continue;

        const bool up = rise > 0.0;
        const double slack = kLevelSlack * std::max(1.0, std::abs(b.level));
        while (true) {
            const double level = up ? ref + threshold : ref - threshold;
            if (up ? level > b.level + slack : level < b.level - slack) break;

            double off = (level - a.level) * dt / rise;
            off = std::clamp(off, from, dt);
            out.emplace_back(signal.x, signal.y, a.t + floor_offset(off), static_cast<std::uint8_t>(up ? 1 : 0));
            ref = level;

            if (refractory == 0) {
                from = off;
                continue;
            }
            const double end = off + static_cast<double>(refractory);
            if (end >= dt) {
                holding = true;
                hold_base = a.t;
                hold_off = end;
                break;
            }
            from = end;
            ref = a.level + rise * from / dt;
        }
    }
    return out;
}

BrightnessSignal with_edges(const BrightnessSignal& signal, std::uint64_t t0, std::uint64_t t1) {
    BrightnessSignal out = signal;
    for (std::uint64_t t : {t0, t1}) {
        auto it = std::lower_bound(out.samples.begin(), out.samples.end(), t,
                                   [](const BrightnessSample& s, std::uint64_t v) { return s.t < v; });
        if (it != out.samples.end() && it->t == t) continue;
        const double level = out.at(static_cast<double>(t));
        out.samples.insert(it, {t, level});
    }
    return out;
}

}  // namespace

double BrightnessSignal::at(double t) const {
    if (samples.empty()) return 0.0;
    if (t <= static_cast<double>(samples.front().t)) return samples.front().level;
    if (t >= static_cast<double>(samples.back().t)) return samples.back().level;
    auto it = std::upper_bound(samples.begin(), samples.end(), t,
                               [](double v, const BrightnessSample& s) { return v < static_cast<double>(s.t); });
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double span = static_cast<double>(b.t - a.t);
    return a.level + (b.level - a.level) * (t - static_cast<double>(a.t)) / span;
}

EventStream generate_events(const BrightnessSignal& signal, const SensorModel& model) {
    check_model(model);
    check_pixel(signal, model.geometry);
    return {model.geometry, pixel_events(signal, model.threshold, model.refractory_us)};
}

EventStream generate_events(const std::vector<BrightnessSignal>& signals, const SensorModel& model) {
    std::vector<std::vector<Event>> per_pixel(signals.size());
    // Validate up front so nothing throws inside the parallel region.
    check_model(model);
    for (const auto& s : signals) check_pixel(s, model.geometry);

    const auto count = static_cast<std::ptrdiff_t>(signals.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        per_pixel[k] = pixel_events(signals[k], model.threshold, model.refractory_us);
    }

    std::vector<Event> all;
    std::size_t total = 0;
    for (const auto& v : per_pixel) total += v.size();
    all.reserve(total);
    for (const auto& v : per_pixel) all.insert(all.end(), v.begin(), v.end());
    return {model.geometry, sort_stable(std::move(all))};
}

BrightnessSignal apply_perturbation(const BrightnessSignal& signal, const Perturbation& pert) {
    check_signal(signal);
    if (signal.samples.empty()) throw InvalidArgument("cannot perturb an empty signal");
    if (pert.t_start > pert.t_end) throw InvalidArgument("perturbation window must satisfy t_start <= t_end");
    if (pert.t_start < signal.samples.front().t || pert.t_end > signal.samples.back().t) {
        throw InvalidArgument("perturbation window lies outside the signal");
    }
    if (pert.kind == PerturbationKind::DelayedVariation) {
        if (pert.delay_us == 0) return signal;
        if (pert.t_end + pert.delay_us > signal.samples.back().t) {
            throw InvalidArgument("delayed window runs past the end of the signal");
        }
    }

    const BrightnessSignal edged = with_edges(signal, pert.t_start, pert.t_end);
    const auto& in = edged.samples;
    const auto inside = [&](const BrightnessSample& s) { return s.t >= pert.t_start && s.t <= pert.t_end; };
    BrightnessSignal out{signal.x, signal.y, {}};
    out.samples.reserve(in.size() + 1);

    switch (pert.kind) {
        case PerturbationKind::OppositeLightDark: {
            const double pivot = edged.at(static_cast<double>(pert.t_start));
            for (const auto& s : in) out.samples.push_back(inside(s) ? BrightnessSample{s.t, 2.0 * pivot - s.level} : s);
            break;
        }
        case PerturbationKind::InvertedVariation: {
            std::vector<BrightnessSample> window;
            for (const auto& s : in) {
                if (s.t < pert.t_start) out.samples.push_back(s);
                else if (inside(s)) window.push_back({pert.t_start + pert.t_end - s.t, s.level});
            }
            out.samples.insert(out.samples.end(), window.rbegin(), window.rend());
            for (const auto& s : in) {
                if (s.t > pert.t_end) out.samples.push_back(s);
            }
            break;
        }
        case PerturbationKind::DelayedVariation: {
            const std::uint64_t d = pert.delay_us;
            for (const auto& s : in) {
                if (s.t <= pert.t_start) out.samples.push_back(s);
            }
            for (const auto& s : in) {
                if (inside(s)) out.samples.push_back({s.t + d, s.level});
            }
            for (const auto& s : in) {
                if (s.t > pert.t_end + d) out.samples.push_back(s);
            }
            break;
        }
    }
    return out;
}

PerturbationEffect perturbation_effect(const BrightnessSignal& signal, const SensorModel& model, const Perturbation& pert) {
    return {generate_events(signal, model), generate_events(apply_perturbation(signal, pert), model)};
}

Scene parse_scene(std::string_view text) {
    Scene scene;
    bool have_header = false;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> index;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        const std::size_t line_offset = pos;
        pos = eol + 1;

        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') continue;

        std::istringstream fields{std::string(line)};
        if (!have_header) {
            std::uint64_t w = 0, h = 0, t_max = 0;
            std::string extra;
            if (!(fields >> w >> h >> t_max) || (fields >> extra) || w < 1 || h < 1 || w > 65536 || h > 65536) {
                throw FormatError(line_offset, "scene header must be `width height t_max` with 1 <= width, height <= 65536");
            }
            scene.geometry = {static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h), t_max};
            have_header = true;
            continue;
        }

        std::uint64_t x = 0, y = 0, t = 0;
        double level = 0.0;
        std::string extra;
        if (!(fields >> x >> y >> t >> level) || (fields >> extra) || !std::isfinite(level)) {
            throw FormatError(line_offset, "scene sample must be `x y t_us L`");
        }
        if (x >= scene.geometry.width || y >= scene.geometry.height || t > scene.geometry.t_max) {
            throw FormatError(line_offset, "scene sample outside the declared geometry");
        }
        const auto key = std::make_pair(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
        auto [it, fresh] = index.try_emplace(key, scene.signals.size());
        if (fresh) {
            scene.signals.push_back({static_cast<std::uint16_t>(x), static_cast<std::uint16_t>(y), {}});
        }
        auto& samples = scene.signals[it->second].samples;
        if (!samples.empty() && t <= samples.back().t) {
            throw FormatError(line_offset, "scene sample times must strictly increase per pixel");
        }
        samples.push_back({t, level});
    }
    if (!have_header) throw FormatError(0, "scene file has no header line");
    return scene;
}

Scene read_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scene file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str());
}

}  // namespace estf
