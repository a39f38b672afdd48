#include "estf/augment.hpp"

namespace estf {

std::string_view to_string(OpKind op) {
    switch (op) {
        case OpKind::None: return "none";
        case OpKind::Estf: return "estf";
        case OpKind::Istp: return "istp";
        case OpKind::Dst: return "dst";
        case OpKind::EventDrop: return "drop";
        case OpKind::Flip: return "flip";
        case OpKind::Translate: return "translate";
    }
    return "?";
}

std::optional<OpKind> parse_op(std::string_view name) {
    for (OpKind op : {OpKind::None, OpKind::Estf, OpKind::Istp, OpKind::Dst, OpKind::EventDrop, OpKind::Flip,
                      OpKind::Translate}) {
        if (name == to_string(op)) return op;
    }
    if (name == "event_drop") return OpKind::EventDrop;
    return std::nullopt;
}

AugmentOutcome apply(const EventStream& stream, const AugmentSpec& spec, std::uint64_t seed) {
    Rng rng(seed);
    AugmentOutcome out;
    switch (spec.op) {
        case OpKind::None:
            out.stream = stream;
            break;
        case OpKind::Estf: {
            EstfConfig config = spec.estf;
            config.seed = seed;
            auto r = estf_traced(stream, config, rng);
            out.stream = std::move(r.stream);
            out.draws = {r.draws.istp, r.draws.dst, r.draws.drift};
            break;
        }
        case OpKind::Istp: {
            const auto frag = draw_fragment(stream, spec.estf.c_istp, rng);
            out.stream = istp(stream, frag.fragment, spec.estf.d_istp);
            out.draws.istp = frag;
            break;
        }
        case OpKind::Dst: {
            const auto frag = draw_fragment(stream, spec.estf.c_dst, rng);
            const auto drift = draw_drift(stream.geometry(), spec.estf.d_dst, spec.estf.r, rng);
            out.stream = dst(stream, frag.fragment, drift);
            out.draws.dst = frag;
            out.draws.drift = drift;
            break;
        }
        case OpKind::EventDrop:
            out.stream = event_drop(stream, spec.drop, rng);
            break;
        case OpKind::Flip:
            out.stream = flip_horizontal(stream);
            break;
        case OpKind::Translate:
            out.stream = translate(stream, spec.dx, spec.dy);
            break;
    }
    return out;
}

}  // namespace estf
