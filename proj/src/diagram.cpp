#include "cherry/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cherry/parallel.hpp"

namespace cherry {

const char* endpoint_tag_name(EndpointTag tag) {
    switch (tag) {
        case EndpointTag::LoopAtA: return "loop_at_a";
        case EndpointTag::LoopAtB: return "loop_at_b";
        case EndpointTag::RangeCropped: return "range_cropped";
    }
    return "?";
}

double backward_lift(const FlatCircleMap& m, double z, int steps) {
    for (int i = 0; i < steps; ++i) {
        double rep = m.bridge_inverse(z);
        double k = std::round(z - m.eval_lift(rep));
        z = rep + k;
    }
    return z;
}

namespace {

// Loop condition for endpoint e of the p/q window: the backward chain from
// e + p must end at the critical lift. Along the true cycle every chain
// point stays at or above the critical value (the cycle's minimum is c), so
// a chain point dipping below it certifies theta past the root. Near
// accumulation parameters whole cascades of windows sit below double
// resolution; the dead band eta absorbs them into the degenerate answer.
struct EndpointCondition {
    const MapFamily& fam;
    long long p;
    int steps;
    bool at_b;
    double eta = 1e-12;

    // -1: theta left of the endpoint root, +1: right, 0: within resolution.
    int side(double theta) const {
        FlatCircleMap m = fam.at(theta);
        double c_tot = m.critical_lift();
        double z = (at_b ? m.flat_b() : m.flat_a()) + (double)p;
        for (int i = 0; i < steps; ++i) {
            double rep = m.bridge_inverse(z);
            double k = std::round(z - m.eval_lift(rep));
            z = rep + k;
            if (z < c_tot - eta) return +1;
        }
        double psi = c_tot - z;
        if (psi > eta) return +1;
        if (psi < -eta) return -1;
        return 0;
    }

    // Residual of the loop condition with the chain clamped to the critical
    // value inside the dead band; meaningful at the converged endpoint.
    double certificate(double theta) const {
        FlatCircleMap m = fam.at(theta);
        double c_tot = m.critical_lift();
        double z = (at_b ? m.flat_b() : m.flat_a()) + (double)p;
        for (int i = 0; i < steps; ++i) {
            double rep = m.bridge_inverse(z);
            double k = std::round(z - m.eval_lift(rep));
            z = rep + k;
            if (z < c_tot) z = c_tot;
        }
        return std::fabs(c_tot - z);
    }
};

// Smallest theta in [lo, hi] with side >= target, assuming monotone sides.
template <typename Side>
double bisect_side(Side&& side, double lo, double hi, int budget, double tol) {
    for (int i = 0; i < budget && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (side(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace

std::optional<Plateau> plateau_for(const MapFamily& fam, const Rational& pq, Interval window,
                                   const PlateauOptions& opt) {
    double w0 = std::max(window.lo, fam.theta_lo());
    double w1 = std::min(window.hi, fam.theta_hi());
    if (!(w0 <= w1)) return std::nullopt;
    const bool lo_is_edge = w0 <= fam.theta_lo();
    const bool hi_is_edge = w1 >= fam.theta_hi();

    const int steps = (int)pq.q - 1;
    EndpointCondition cond_a{fam, pq.p, steps, false};
    EndpointCondition cond_b{fam, pq.p, steps, true};

    int sa0 = cond_a.side(w0), sa1 = cond_a.side(w1);
    int sb0 = cond_b.side(w0), sb1 = cond_b.side(w1);
    if (sa0 > sa1 || sb0 > sb1)
        throw NotMonotone("endpoint sides decreased across the window for " + pq.str());

    if (sb0 > 0) return std::nullopt;  // plateau entirely left of the window
    if (sa1 < 0) return std::nullopt;  // entirely right

    Plateau plat;
    plat.pq = pq;
    plat.hit_index = (int)pq.q - 1;

    if (sa0 >= 0) {
        plat.theta_lo = w0;
        plat.tag_lo = (sa0 > 0 && lo_is_edge) ? EndpointTag::RangeCropped : EndpointTag::LoopAtA;
    } else {
        plat.theta_lo = bisect_side([&](double t) { return cond_a.side(t); }, w0, w1,
                                    opt.bisect_budget, opt.theta_tol);
        plat.tag_lo = EndpointTag::LoopAtA;
    }
    plat.cert_lo = cond_a.certificate(plat.theta_lo);

    if (sb1 <= 0) {
        plat.theta_hi = w1;
        plat.tag_hi = (sb1 < 0 && hi_is_edge) ? EndpointTag::RangeCropped : EndpointTag::LoopAtB;
    } else {
        // Largest theta with side <= 0: mirror of bisect_side.
        double lo = w0, hi = w1;
        for (int i = 0; i < opt.bisect_budget && hi - lo > opt.theta_tol; ++i) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (cond_b.side(mid) > 0)
                hi = mid;
            else
                lo = mid;
        }
        plat.theta_hi = lo;
        plat.tag_hi = EndpointTag::LoopAtB;
    }
    plat.cert_hi = cond_b.certificate(plat.theta_hi);

    if (plat.theta_lo > plat.theta_hi) {
        if (plat.theta_lo - plat.theta_hi > 4.0 * opt.theta_tol)
            throw NotMonotone("inverted plateau for " + pq.str());
        double mid = 0.5 * (plat.theta_lo + plat.theta_hi);
        plat.theta_lo = plat.theta_hi = mid;
    }
    return plat;
}

namespace {

Rational rotation_lower_bound(const RotationNumber& r) {
    return r.is_rational() ? r.rational : r.lo;
}
Rational rotation_upper_bound(const RotationNumber& r) {
    return r.is_rational() ? r.rational : r.hi;
}

}  // namespace

BifDiagram scan_diagram(const MapFamily& fam, Interval theta_range, int max_den,
                        const ScanOptions& opt) {
    if (max_den < 1) throw Error(ErrorClass::Config, "scan_diagram: Q must be >= 1");
    double t0 = std::max(theta_range.lo, fam.theta_lo());
    double t1 = std::min(theta_range.hi, fam.theta_hi());
    if (!(t0 < t1)) throw Error(ErrorClass::Config, "scan_diagram: empty theta range");

    BifDiagram d;
    d.family = fam.fingerprint();
    d.max_den = max_den;
    d.theta_range = {t0, t1};

    RotationNumber r0 = rotation_number(fam.at(t0), opt.rot_max_iter, opt.rot_enclosure);
    RotationNumber r1 = rotation_number(fam.at(t1), opt.rot_max_iter, opt.rot_enclosure);
    Rational lo = rotation_lower_bound(r0);
    Rational hi = rotation_upper_bound(r1);
    if (!(lo < hi)) throw Error(ErrorClass::Numeric, "rotation range is degenerate");

    std::vector<Rational> fractions = farey_enumerate(lo, hi, max_den);

    // Denominator levels are processed in order so each window can be cut
    // down to the gap between the already-computed neighbors; searches within
    // a level are independent.
    std::map<Rational, Plateau> computed;
    for (int q = 1; q <= max_den; ++q) {
        std::vector<Rational> level;
        for (const auto& f : fractions)
            if (f.q == q) level.push_back(f);
        if (level.empty()) continue;

        std::vector<std::optional<Plateau>> results(level.size());
        std::vector<Interval> windows(level.size());
        for (std::size_t i = 0; i < level.size(); ++i) {
            Interval w{t0, t1};
            auto it = computed.lower_bound(level[i]);
            if (it != computed.end()) w.hi = it->second.theta_lo;
            if (it != computed.begin()) w.lo = std::prev(it)->second.theta_hi;
            windows[i] = w;
        }
        parallel_for(level.size(), opt.jobs, [&](std::size_t i) {
            try {
                results[i] = plateau_for(fam, level[i], windows[i], opt.plateau);
            } catch (const Error& e) {
                throw Error(e.error_class(),
                            "plateau " + level[i].str() + ": " + e.what());
            }
        });
        for (std::size_t i = 0; i < level.size(); ++i)
            if (results[i]) computed.emplace(level[i], *results[i]);
    }

    d.plateaus.reserve(computed.size());
    for (auto& [pq, plat] : computed) d.plateaus.push_back(plat);
    std::sort(d.plateaus.begin(), d.plateaus.end(),
              [](const Plateau& x, const Plateau& y) { return x.theta_lo < y.theta_lo; });

    // Residual cover: the range minus open plateau interiors. Degenerate
    // slivers where a cropped plateau meets the range edge are not residual
    // points; zero-width gaps strictly inside are genuine squeezed gaps.
    d.residual.depth = max_den;
    double cur = t0;
    for (const auto& plat : d.plateaus) {
        double gap_hi = std::max(plat.theta_lo, cur);
        bool keep = gap_hi > cur || (cur > t0 && gap_hi < t1);
        if (keep) d.residual.intervals.push_back({cur, gap_hi});
        cur = std::max(cur, plat.theta_hi);
    }
    if (t1 > cur || (cur > t0 && cur < t1)) d.residual.intervals.push_back({cur, std::max(cur, t1)});

    for (const auto& plat : d.plateaus) {
        if (plat.tag_lo != EndpointTag::RangeCropped && plat.theta_lo > t0 && plat.theta_lo < t1)
            d.loops.push_back(plat.theta_lo);
        if (plat.tag_hi != EndpointTag::RangeCropped && plat.theta_hi > t0 && plat.theta_hi < t1)
            d.loops.push_back(plat.theta_hi);
    }
    std::sort(d.loops.begin(), d.loops.end());
    return d;
}

double residual_measure(const BifDiagram& d) { return d.residual.measure(); }

DimensionFit box_dimension_estimate(const BifDiagram& d, const std::vector<double>& ladder) {
    return box_dimension_fit(d.residual, ladder);
}

std::vector<double> default_residual_ladder(const BifDiagram& d, int n) {
    double hi = 0.0;
    for (const auto& iv : d.residual.intervals) hi = std::max(hi, iv.length());
    double lo = d.residual.resolution();
    if (!(hi > 0.0) || !(lo > 0.0) || !(hi > lo)) throw ScaleRangeInvalid(lo, hi);
    return geometric_ladder(hi, lo, n);
}

std::vector<StaircaseSample> staircase(const MapFamily& fam, Interval range, int n,
                                       long max_iter, double enclosure) {
    std::vector<StaircaseSample> out;
    out.reserve((std::size_t)n);
    for (int i = 0; i < n; ++i) {
        double theta = range.lo + (range.hi - range.lo) * i / (n - 1.0);
        RotationNumber r = rotation_number(fam.at(theta), max_iter, enclosure);
        out.push_back({theta, r.midpoint(), r.width()});
    }
    return out;
}

}  // namespace cherry
