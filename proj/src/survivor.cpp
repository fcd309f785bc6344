#include "cherry/survivor.hpp"

#include <algorithm>
#include <cmath>

namespace cherry {

double inverse_branch(const FlatCircleMap& map, double z) { return map.bridge_inverse(z); }

IntervalCover survivor_cover(const FlatCircleMap& map, int depth, const SurvivorOptions& opt) {
    if (depth < 0) throw Error(ErrorClass::Config, "survivor_cover: depth must be >= 0");
    const double b = map.flat_b();
    const double a1 = map.flat_a() + 1.0;
    const double c_lo = map.critical_lift();
    const double c_hi = c_lo + 1.0;

    IntervalCover cover;
    cover.intervals.push_back({b, a1});

    for (int level = 0; level < depth; ++level) {
        std::vector<Interval> next;
        next.reserve(cover.intervals.size() + 1);
        for (const auto& iv : cover.intervals) {
            // Represent the circle arc [lo, hi] inside the image window
            // [c, c+1]; an arc straddling the wrap point over c splits in two.
            long long k_min = (long long)std::floor(c_lo - iv.lo);
            long long k_max = (long long)std::ceil(c_hi - iv.hi);
            for (long long k = k_min; k <= k_max; ++k) {
                double lo = std::max(iv.lo + (double)k, c_lo);
                double hi = std::min(iv.hi + (double)k, c_hi);
                if (!(lo <= hi)) continue;
                double y_lo = map.bridge_inverse(lo) - opt.outward;
                double y_hi = map.bridge_inverse(hi) + opt.outward;
                next.push_back({std::max(y_lo, b), std::min(y_hi, a1)});
            }
        }
        IntervalCover merged;
        merged.intervals = std::move(next);
        merged.sort_and_merge();
        merged.depth = level + 1;
        if (merged.intervals.size() > opt.interval_cap)
            throw DepthOverflow(merged.intervals.size());
        cover = std::move(merged);
    }
    cover.depth = depth;
    return cover;
}

}  // namespace cherry
