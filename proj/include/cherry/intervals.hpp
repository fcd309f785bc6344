#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cherry {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

// Finite cover of a Cantor-like set by disjoint sorted closed intervals.
struct IntervalCover {
    std::vector<Interval> intervals;  // disjoint, ascending
    int depth = 0;                    // generation depth or denominator bound

    double measure() const;
    // Smallest positive interval length; 0 when the cover is all points.
    double resolution() const;
    void sort_and_merge();
};

// Number of eps-grid cells meeting the cover, grid anchored at the cover's
// left end. Cells touched in a single boundary point do not count; a
// degenerate interval counts one cell.
long long box_count(const IntervalCover& cover, double eps);

struct BoxCountEntry {
    double eps;
    long long n;
};

std::vector<BoxCountEntry> box_count_table(const IntervalCover& cover,
                                           const std::vector<double>& ladder);

struct DimensionFit {
    double slope = 0.0;      // least-squares slope of log N vs log(1/eps)
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double conf95 = 0.0;     // 2-sigma band on the slope
    double r2 = 1.0;
    int points = 0;
};

// Throws ScaleRangeInvalid when the ladder goes below the cover resolution.
DimensionFit box_dimension_fit(const IntervalCover& cover, const std::vector<double>& ladder);

// Fit on a precomputed table (no resolution check).
DimensionFit dimension_fit_from_table(const std::vector<BoxCountEntry>& table);

// Descending geometric ladder from eps_hi to eps_lo with n entries.
std::vector<double> geometric_ladder(double eps_hi, double eps_lo, int n);

}  // namespace cherry
