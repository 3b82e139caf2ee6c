#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mfdfa/errors.hpp"

namespace mfdfa {

enum class Method { mfdfa, biosw };

inline const char* method_name(Method m) {
    return m == Method::mfdfa ? "mfdfa" : "biosw";
}

/// Half-open sample range [start, start + length) into a profile.
struct Window {
    std::size_t start = 0;
    std::size_t length = 0;
};

/// Window layout over a profile at one scale. Forward windows come first,
/// then the backward pass; both passes have the same count.
struct SegmentationPlan {
    std::vector<Window> windows;
    std::size_t scale = 0;
    Method method = Method::mfdfa;
    std::size_t overlap = 0;  // samples shared by neighbouring windows (biosw only)
    std::size_t forward_count = 0;
    std::size_t backward_count = 0;
};

namespace detail {

inline void check_in_bounds(const SegmentationPlan& plan, std::size_t n_total) {
    for (const Window& w : plan.windows) {
        if (w.start + w.length > n_total || w.length < 2)
            fail(errc::bad_spec, "window [" + std::to_string(w.start) + ", " +
                                     std::to_string(w.start + w.length) +
                                     ") escapes series of length " + std::to_string(n_total));
    }
}

}  // namespace detail

/// Classic layout: N_s = floor(N/s) non-overlapping windows tiled from the
/// left, and the same tiling repeated from the right end so a remainder at
/// either edge is never discarded. 2*N_s windows altogether.
inline SegmentationPlan mfdfa_plan(std::size_t n_total, std::size_t scale) {
    if (scale < 4)
        fail(errc::scale_too_small, "scale " + std::to_string(scale) + " below minimum 4");
    if (n_total < 4 * scale)
        fail(errc::scale_too_large, "scale " + std::to_string(scale) +
                                        " exceeds N/4 for N = " + std::to_string(n_total));

    const std::size_t count = n_total / scale;
    SegmentationPlan plan;
    plan.scale = scale;
    plan.method = Method::mfdfa;
    plan.forward_count = count;
    plan.backward_count = count;
    plan.windows.reserve(2 * count);
    for (std::size_t v = 0; v < count; ++v)
        plan.windows.push_back({v * scale, scale});
    for (std::size_t v = 1; v <= count; ++v)
        plan.windows.push_back({n_total - v * scale, scale});

    detail::check_in_bounds(plan, n_total);
    return plan;
}

/// Binary overlapped sliding-window layout: the profile is split at
/// n = floor(N/2); each half is covered once by windows of length s
/// advancing with stride s - l, so neighbours share l samples. The last
/// forward window may spill past the midpoint (by at most s - 1 samples),
/// and the backward pass mirrors the same rule from the right end.
/// Each pass holds ceil((n - s)/(s - l)) + 1 windows.
inline SegmentationPlan biosw_plan(std::size_t n_total, std::size_t scale, std::size_t overlap) {
    if (scale < 3)
        fail(errc::scale_too_small, "scale " + std::to_string(scale) + " below minimum 3");
    if (overlap == 0 || 2 * overlap >= scale)
        fail(errc::bad_overlap, "overlap " + std::to_string(overlap) +
                                    " must satisfy 0 < l < s/2 for s = " + std::to_string(scale));
    const std::size_t half = n_total / 2;
    if (scale > half)
        fail(errc::scale_too_large, "scale " + std::to_string(scale) +
                                        " exceeds N/2 for N = " + std::to_string(n_total));

    const std::size_t stride = scale - overlap;
    // ceil((half - scale)/stride) + 1 windows per pass; equivalently all
    // starts k*stride with k*stride < half - overlap.
    const std::size_t count = (half - scale + stride - 1) / stride + 1;

    SegmentationPlan plan;
    plan.scale = scale;
    plan.method = Method::biosw;
    plan.overlap = overlap;
    plan.forward_count = count;
    plan.backward_count = count;
    plan.windows.reserve(2 * count);
    for (std::size_t k = 0; k < count; ++k)
        plan.windows.push_back({k * stride, scale});
    for (std::size_t k = 0; k < count; ++k)
        plan.windows.push_back({n_total - scale - k * stride, scale});

    detail::check_in_bounds(plan, n_total);
    return plan;
}

/// (2 * N*_s) / N_s for a shared (N, s, l): how close the overlapped layout
/// comes to matching the classic window count.
inline double segment_count_ratio(std::size_t n_total, std::size_t scale, std::size_t overlap) {
    const SegmentationPlan classic = mfdfa_plan(n_total, scale);
    const SegmentationPlan overlapped = biosw_plan(n_total, scale, overlap);
    return static_cast<double>(overlapped.windows.size()) /
           static_cast<double>(classic.forward_count);
}

}  // namespace mfdfa
