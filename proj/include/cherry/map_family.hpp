#pragma once

#include <functional>
#include <string>
#include <utility>

#include "cherry/flat_map.hpp"

namespace cherry {

// One-parameter family of flat circle maps with monotone parameter action:
// F_theta(y) nondecreasing in theta for fixed y, strictly increasing on the
// flat-arc interior, with a common expansion floor over the range.
class MapFamily {
public:
    using Action = std::function<FlatCircleMap(double)>;

    // Boyd action F_theta = F_0 + theta with the flat arc fixed.
    static MapFamily boyd(const FlatCircleMap& base, double theta_lo, double theta_hi);

    // Arbitrary action; the caller certifies d/dtheta F_theta(y) >= floor_delta
    // where defined and a continuous critical lift.
    static MapFamily custom(std::string name, Action action, double theta_lo, double theta_hi,
                            double floor_delta);

    FlatCircleMap at(double theta) const { return action_(theta); }

    double theta_lo() const { return lo_; }
    double theta_hi() const { return hi_; }
    double monotonicity_floor() const { return delta_; }
    const std::string& fingerprint() const { return name_; }

private:
    MapFamily(std::string name, Action action, double lo, double hi, double delta)
        : name_(std::move(name)), action_(std::move(action)), lo_(lo), hi_(hi), delta_(delta) {}

    std::string name_;
    Action action_;
    double lo_, hi_, delta_;
};

}  // namespace cherry
