#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "estf/transforms.hpp"

namespace estf {

enum class OpKind { None, Estf, Istp, Dst, EventDrop, Flip, Translate };

std::string_view to_string(OpKind op);
std::optional<OpKind> parse_op(std::string_view name);

/// One named augmentation plus its parameters. Only the fields relevant
/// to `op` are read: Istp uses c_istp/d_istp, Dst uses c_dst/d_dst/r.
struct AugmentSpec {
    OpKind op = OpKind::None;
    EstfConfig estf;  // seed field ignored; the seed is passed to apply()
    DropParams drop;
    std::int64_t dx = 0;
    std::int64_t dy = 0;
};

struct AugmentDraws {
    std::optional<FragmentDraw> istp;
    std::optional<FragmentDraw> dst;
    std::optional<DriftParams> drift;
};

struct AugmentOutcome {
    EventStream stream;
    AugmentDraws draws;
};

/// Runs `spec` on `stream` with a generator seeded from `seed`.
/// For Estf this matches estf() with config.seed = seed.
AugmentOutcome apply(const EventStream& stream, const AugmentSpec& spec, std::uint64_t seed);

}  // namespace estf
