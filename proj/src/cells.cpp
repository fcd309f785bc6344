#include "cherry/cells.hpp"

#include <algorithm>
#include <cmath>

namespace cherry {

namespace {

void require_inside_flat_arc(const FlatCircleMap& m, const CherryCell& cell, double theta) {
    double d = cell.d(theta);
    if (!(d > m.flat_a() && d < m.flat_b())) throw NotInsideFlatArc(d, theta);
}

}  // namespace

std::optional<double> connection_parameter(const MapFamily& fam, const Plateau& plat,
                                           const CherryCell& cell,
                                           const ConnectionOptions& opt) {
    const double lo = plat.theta_lo, hi = plat.theta_hi;
    const int steps = (int)plat.pq.q - 1;

    // Difference between the critical lift and the backward image of the
    // cell point: equivalent to f^(q-1)(c) - d on the lift, but evaluated on
    // the contracting side. Slope >= delta + beta via the chain rule.
    auto diff = [&](double theta) {
        FlatCircleMap m = fam.at(theta);
        require_inside_flat_arc(m, cell, theta);
        double back = backward_lift(m, cell.d(theta) + (double)plat.pq.p, steps);
        return m.critical_lift() - back;
    };

    double f_lo = diff(lo), f_hi = diff(hi);
    if (!(f_lo < 0.0 && f_hi > 0.0)) return std::nullopt;  // no strictly interior root
    double a = lo, b = hi;
    for (int i = 0; i < opt.bisect_budget && b - a > opt.theta_tol; ++i) {
        double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (diff(mid) < 0.0)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

BifDiagram augment_diagram(BifDiagram diagram, const MapFamily& fam,
                           const std::vector<CherryCell>& cells, const ConnectionOptions& opt) {
    diagram.connections.clear();
    if (cells.empty()) return diagram;
    for (const auto& plat : diagram.plateaus) {
        if (plat.cropped()) continue;
        std::vector<Connection> here;
        for (const auto& cell : cells) {
            if (auto theta = connection_parameter(fam, plat, cell, opt))
                here.push_back({plat.pq, cell.label, *theta});
        }
        std::sort(here.begin(), here.end(),
                  [](const Connection& x, const Connection& y) { return x.theta < y.theta; });
        diagram.connections.insert(diagram.connections.end(), here.begin(), here.end());
    }
    return diagram;
}

std::optional<int> germ_signature(const BifDiagram& diagram) {
    std::optional<int> n;
    for (const auto& plat : diagram.plateaus) {
        if (plat.cropped()) continue;
        int count = 0;
        for (const auto& c : diagram.connections)
            if (c.pq == plat.pq) ++count;
        if (!n)
            n = count;
        else if (*n != count)
            return std::nullopt;
    }
    return n ? n : std::optional<int>(0);
}

bool germs_equivalent(const std::optional<int>& s1, const std::optional<int>& s2) {
    return s1.has_value() && s2.has_value() && *s1 == *s2;
}

}  // namespace cherry
