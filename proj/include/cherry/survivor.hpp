#pragma once

#include "cherry/flat_map.hpp"
#include "cherry/intervals.hpp"

namespace cherry {

// Unique bridge preimage in [b, a+1] of the lift value z.
double inverse_branch(const FlatCircleMap& map, double z);

struct SurvivorOptions {
    std::size_t interval_cap = 1000000;
    // Outward rounding per endpoint keeps the pullback a true cover despite
    // root-finding error.
    double outward = 1e-13;
};

// E_0 = [b, a+1]; E_{n+1} is the pullback of E_n through the inverse branch,
// split at the discontinuity over c. Returns E_depth. Interval counts beyond
// the cap throw DepthOverflow.
IntervalCover survivor_cover(const FlatCircleMap& map, int depth,
                             const SurvivorOptions& opt = {});

}  // namespace cherry
