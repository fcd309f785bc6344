#include "cherry/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cherry/errors.hpp"

namespace cherry {

double IntervalCover::measure() const {
    double m = 0.0;
    for (const auto& iv : intervals) m += iv.length();
    return m;
}

double IntervalCover::resolution() const {
    double r = 0.0;
    for (const auto& iv : intervals) {
        double len = iv.length();
        if (len > 0.0 && (r == 0.0 || len < r)) r = len;
    }
    return r;
}

void IntervalCover::sort_and_merge() {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::vector<Interval> merged;
    for (const auto& iv : intervals) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }
    intervals.swap(merged);
}

long long box_count(const IntervalCover& cover, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("box_count: eps must be positive");
    if (cover.intervals.empty()) return 0;
    const double x0 = cover.intervals.front().lo;
    // Guard absorbs rounding of (x - x0)/eps at exact grid boundaries.
    const double guard = 1e-9;
    long long n = 0;
    long long last = std::numeric_limits<long long>::min();
    for (const auto& iv : cover.intervals) {
        long long k_lo = (long long)std::floor((iv.lo - x0) / eps + guard);
        long long k_hi;
        if (iv.length() <= 0.0) {
            k_hi = k_lo;
        } else {
            k_hi = (long long)std::ceil((iv.hi - x0) / eps - guard) - 1;
            if (k_hi < k_lo) k_hi = k_lo;
        }
        if (k_lo <= last) k_lo = last + 1;
        if (k_hi >= k_lo) {
            n += k_hi - k_lo + 1;
            last = k_hi;
        }
    }
    return n;
}

std::vector<BoxCountEntry> box_count_table(const IntervalCover& cover,
                                           const std::vector<double>& ladder) {
    std::vector<BoxCountEntry> table;
    table.reserve(ladder.size());
    for (double eps : ladder) table.push_back({eps, box_count(cover, eps)});
    return table;
}

DimensionFit dimension_fit_from_table(const std::vector<BoxCountEntry>& table) {
    if (table.size() < 2) throw std::invalid_argument("dimension fit needs >= 2 scales");
    const int n = (int)table.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& e : table) {
        double x = std::log(1.0 / e.eps);
        double y = std::log((double)std::max<long long>(e.n, 1));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double den = n * sxx - sx * sx;
    DimensionFit fit;
    fit.points = n;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    for (const auto& e : table) {
        double x = std::log(1.0 / e.eps);
        double y = std::log((double)std::max<long long>(e.n, 1));
        double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
        ss_tot += (y - ybar) * (y - ybar);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    if (n > 2) fit.stderr_slope = std::sqrt(ss_res / (n - 2) / (sxx - sx * sx / n));
    fit.conf95 = 2.0 * fit.stderr_slope;
    return fit;
}

DimensionFit box_dimension_fit(const IntervalCover& cover, const std::vector<double>& ladder) {
    if (ladder.empty()) throw std::invalid_argument("empty scale ladder");
    double floor_eps = cover.resolution();
    for (double eps : ladder) {
        if (floor_eps > 0.0 && eps < floor_eps * (1.0 - 1e-12))
            throw ScaleRangeInvalid(eps, floor_eps);
    }
    return dimension_fit_from_table(box_count_table(cover, ladder));
}

std::vector<double> geometric_ladder(double eps_hi, double eps_lo, int n) {
    if (!(eps_hi > eps_lo) || !(eps_lo > 0.0) || n < 2)
        throw std::invalid_argument("bad geometric ladder");
    std::vector<double> out(n);
    double r = std::pow(eps_lo / eps_hi, 1.0 / (n - 1));
    double e = eps_hi;
    for (int i = 0; i < n; ++i, e *= r) out[i] = e;
    return out;
}

}  // namespace cherry
