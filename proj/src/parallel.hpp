#pragma once

// Data-parallel building blocks shared by the kernels. Every helper here
// produces output that is independent of the thread count.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "estf/event.hpp"

namespace estf::detail {

// Below this many events the fork/join overhead dominates.
inline constexpr std::size_t kParallelGrain = 1 << 15;

inline int thread_budget(std::size_t n) {
#ifdef _OPENMP
    return n < kParallelGrain ? 1 : omp_get_max_threads();
#else
    (void)n;
    return 1;
#endif
}

/// Applies fn(i) for every i in [0, n).
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (thread_budget(n) > 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

/// Order-preserving filter-map: out holds fn(i, in[i]) for every index
/// where it returned a value, in index order.
///
/// Parallel path: per-chunk survivor count, exclusive scan, then each chunk
/// writes its slice. fn is evaluated twice per event there, so it must be pure.
template <class Fn>
std::vector<Event> compact_map(std::span<const Event> in, Fn&& fn) {
    std::vector<Event> out;
    const std::size_t n = in.size();
    const int threads = thread_budget(n);
    if (threads <= 1) {
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (auto e = fn(i, in[i])) out.push_back(*e);
        }
        return out;
    }

    const std::size_t chunks = static_cast<std::size_t>(threads);
    const std::size_t step = (n + chunks - 1) / chunks;
    std::vector<std::size_t> offsets(chunks + 1, 0);

#pragma omp parallel for schedule(static, 1) num_threads(threads)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        const std::size_t lo = std::min(n, static_cast<std::size_t>(c) * step);
        const std::size_t hi = std::min(n, lo + step);
        std::size_t kept = 0;
        for (std::size_t i = lo; i < hi; ++i) kept += fn(i, in[i]).has_value();
        offsets[static_cast<std::size_t>(c) + 1] = kept;
    }
    for (std::size_t c = 0; c < chunks; ++c) offsets[c + 1] += offsets[c];

    out.resize(offsets[chunks]);
#pragma omp parallel for schedule(static, 1) num_threads(threads)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
        const std::size_t lo = std::min(n, static_cast<std::size_t>(c) * step);
        const std::size_t hi = std::min(n, lo + step);
        std::size_t w = offsets[static_cast<std::size_t>(c)];
        for (std::size_t i = lo; i < hi; ++i) {
            if (auto e = fn(i, in[i])) out[w++] = *e;
        }
    }
    return out;
}

/// Merges a re-timed fragment back between the untouched prefix and suffix
/// of a sorted stream. Equivalent to a stable sort keyed on (t, original
/// index): prefix wins ties against the fragment, the fragment wins ties
/// against the suffix. `fragment` must already be sorted by that key.
inline std::vector<Event> merge_fragment(std::span<const Event> prefix, std::span<const Event> fragment,
                                         std::span<const Event> suffix) {
    std::vector<Event> out;
    out.reserve(prefix.size() + fragment.size() + suffix.size());
    std::size_t i = 0, j = 0, k = 0;
    while (i < prefix.size() && j < fragment.size()) {
        if (fragment[j].t < prefix[i].t) out.push_back(fragment[j++]);
        else out.push_back(prefix[i++]);
    }
    out.insert(out.end(), prefix.begin() + static_cast<std::ptrdiff_t>(i), prefix.end());
    while (j < fragment.size() && k < suffix.size()) {
        if (suffix[k].t < fragment[j].t) out.push_back(suffix[k++]);
        else out.push_back(fragment[j++]);
    }
    out.insert(out.end(), fragment.begin() + static_cast<std::ptrdiff_t>(j), fragment.end());
    out.insert(out.end(), suffix.begin() + static_cast<std::ptrdiff_t>(k), suffix.end());
    return out;
}

}  // namespace estf::detail
