#pragma once

#include <cmath>

namespace cherry {

// Circle points are reals in [0,1); arc arithmetic is done on lifts.

inline double wrap_unit(double y) {
    double w = y - std::floor(y);
    return w < 1.0 ? w : 0.0;
}

// Unsigned circle distance, in [0, 1/2].
inline double circle_dist(double x, double y) {
    double d = std::fabs(x - y);
    d -= std::floor(d);
    return d <= 0.5 ? d : 1.0 - d;
}

// Signed representative of x - y in [-1/2, 1/2).
inline double circle_signed(double x, double y) {
    double d = x - y;
    d -= std::floor(d);
    return d < 0.5 ? d : d - 1.0;
}

}  // namespace cherry
