#include "cherry/flow/poincare.hpp"

#include <algorithm>
#include <cmath>

#include "cherry/circle.hpp"

namespace cherry {

namespace {

constexpr double kPi = 3.14159265358979323846;

double arc_contains(double a, double b, double y) {
    // membership of circle point y in the closed positively-oriented arc [a,b]
    double span = wrap_unit(b - a);
    double off = wrap_unit(y - a);
    return off <= span ? 1.0 : 0.0;
}

// Cosine-graded grid on (0,1), clustered at both ends.
std::vector<double> graded_grid(int n) {
    std::vector<double> out;
    out.reserve((std::size_t)n);
    for (int i = 1; i <= n; ++i) {
        double t = double(i) / (n + 1);
        out.push_back(0.5 * (1.0 - std::cos(kPi * t)));
    }
    return out;
}

}  // namespace

ClassNReport class_N_report(const FlowFamily& fam, double theta, int n_grid) {
    ClassNReport rep;
    FieldPtr field = fam.at(theta);

    // (1) exactly two hyperbolic zeros of the required types
    std::vector<Vec2> zeros = locate_equilibria(field);
    rep.n_equilibria = (int)zeros.size();
    int saddles = 0, sinks = 0;
    for (const auto& z : zeros) {
        Jacobian2 j = field_jacobian(field, z);
        double tr = j.trace(), det = j.det();
        if (det < 0.0) {
            ++saddles;
            rep.saddle_trace = tr;
            if (!(tr > 0.0)) rep.detail += "saddle trace not positive; ";
        } else if (det > 0.0 && tr < 0.0) {
            ++sinks;
        }
    }
    rep.cond_equilibria =
        rep.n_equilibria == 2 && saddles == 1 && sinks == 1 && rep.saddle_trace > 0.0;

    // (2) transversality to Sigma
    double min_vx = 1e300;
    for (int i = 0; i < 256; ++i) {
        Vec2 v = field->eval(fam.sigma_x(), i / 256.0);
        min_vx = std::min(min_vx, std::fabs(v.x));
    }
    rep.min_abs_vx_on_sigma = min_vx;
    rep.cond_transversal = min_vx > 1e-6;

    // (3) separatrix first crossings exist
    SeparatrixMarks marks;
    try {
        marks = separatrix_marks(fam, theta);
        rep.a = marks.a;
        rep.b = marks.b;
        rep.c = marks.c;
        rep.cond_crossings = circle_dist(marks.a, marks.b) > 1e-8;
    } catch (const Error& e) {
        rep.detail += std::string("crossings: ") + e.what() + "; ";
        rep.cond_crossings = false;
        return rep;
    }

    // (4) empirical expansivity on the bridge
    try {
        SectionMapSample s = empirical_poincare(fam, theta, n_grid);
        double gmin = 1e300;
        for (std::size_t i = 0; i + 1 < s.y.size(); ++i) {
            double slope = (s.image[i + 1] - s.image[i]) / (s.y[i + 1] - s.y[i]);
            gmin = std::min(gmin, slope);
        }
        rep.gamma_hat = gmin;
        rep.cond_expansive = gmin > 1.0;
    } catch (const Error& e) {
        rep.detail += std::string("expansivity: ") + e.what() + "; ";
        rep.cond_expansive = false;
    }
    return rep;
}

SectionMapSample empirical_poincare(const FlowFamily& fam, double theta, int n_grid,
                                    const ShootOptions& shoot) {
    SectionMapSample out;
    out.theta = theta;
    out.marks = separatrix_marks(fam, theta, shoot);
    const SeparatrixMarks& m = out.marks;

    // Rotate the section chart when the flat arc wraps through 0.
    out.shift = m.a < m.b ? 0.0 : wrap_unit(0.5 * (m.a + m.b) + 0.5);
    double a = wrap_unit(m.a - out.shift);
    double b = wrap_unit(m.b - out.shift);
    double c = wrap_unit(m.c - out.shift);
    if (!(a < b))
        throw Error(ErrorClass::Numeric, "flat arc could not be unwrapped by a chart shift");

    FieldPtr field = fam.at(theta);
    const double blen = a + 1.0 - b;
    CrossingOptions copt;
    copt.event_tol = fam.event_tol();
    copt.t_budget = fam.integ().t_max;
    copt.capture_center = m.sink;

    std::vector<double> grid = graded_grid(n_grid);
    out.y.reserve(grid.size());
    out.image.reserve(grid.size());
    for (double s : grid) {
        double y_chart = b + blen * s;
        double y_raw = y_chart + out.shift;
        CrossingResult r = follow_crossings(field, fam.integ(), {fam.sigma_x(), y_raw},
                                            fam.sigma_x(), 1, copt, false);
        if (r.crossings.empty()) continue;  // captured: inside the flat arc within tolerance
        out.y.push_back(y_chart);
        out.image.push_back(r.crossings.front().point.y - out.shift);
    }
    if (out.y.size() < 8) throw NoCrossing("too few bridge samples returned to the section");

    // Fit the two-exponent bridge model: corner exponents from the saddle
    // eigenvalue ratio, lift offset by vote over interior samples.
    FlatCircleMap model = make_beta_model(a, b, c, m.lambda, m.lambda);
    double offset_sum = 0.0;
    int offset_n = 0;
    for (std::size_t i = 0; i < out.y.size(); ++i) {
        offset_sum += out.image[i] - model.eval_lift(out.y[i]);
        ++offset_n;
    }
    int k_align = (int)std::lround(offset_sum / offset_n);
    out.fitted = make_beta_model(a, b, c, m.lambda, m.lambda, k_align);
    double resid = 0.0;
    for (std::size_t i = 0; i < out.y.size(); ++i)
        resid = std::max(resid, std::fabs(out.fitted->eval_lift(out.y[i]) - out.image[i]));
    out.fit_residual_max = resid;

    // Near-corner exponents by log-log slope over the closest samples.
    auto corner_slope = [&](bool at_b) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (std::size_t i = 0; i < out.y.size(); ++i) {
            double u = at_b ? out.y[i] - b : a + 1.0 - out.y[i];
            double v = at_b ? out.image[i] - (c + k_align)
                            : (c + k_align + 1.0) - out.image[i];
            if (u <= 0 || v <= 0 || u > 0.02 * blen) continue;
            double lx = std::log(u), ly = std::log(v);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++n;
        }
        if (n < 3) return 0.0;
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    out.lambda_fit_b = corner_slope(true);
    out.lambda_fit_a = corner_slope(false);
    return out;
}

double flow_rotation_number(const FlowFamily& fam, double theta, int n_returns, double y_start) {
    FieldPtr field = fam.at(theta);
    CrossingOptions copt;
    copt.event_tol = fam.event_tol();
    copt.t_budget = fam.integ().t_max * 10;
    CrossingResult r = follow_crossings(field, fam.integ(), {fam.sigma_x(), y_start},
                                        fam.sigma_x(), n_returns, copt, false);
    if ((int)r.crossings.size() < n_returns)
        throw NoCrossing("orbit captured after " + std::to_string(r.crossings.size()) +
                         " returns; pick a base point on the survivor side");
    double y_final = r.crossings.back().point.y;
    return (y_final - y_start) / (double)r.crossings.size();
}

namespace {

struct FreeShotSummary {
    std::vector<CrossingEvent> crossings;
    int first_hit = -1;  // index of the first crossing inside the closed flat arc
};

FreeShotSummary free_shot(const FlowFamily& fam, double theta, double a, double b,
                          const ShootOptions& shoot) {
    SeparatrixShot s = shoot_separatrix(fam, theta, SeparatrixKind::UnstableFree, shoot);
    FreeShotSummary out;
    out.crossings = std::move(s.crossings);
    for (std::size_t i = 0; i < out.crossings.size(); ++i) {
        if (arc_contains(a, b, wrap_unit(out.crossings[i].point.y)) > 0.5) {
            out.first_hit = (int)i;
            break;
        }
    }
    return out;
}

}  // namespace

LoopResult loop_bisect(const FlowFamily& fam, Interval bracket, char endpoint, double theta_tol,
                       const ShootOptions& shoot) {
    SeparatrixMarks mid = separatrix_marks(fam, 0.5 * (bracket.lo + bracket.hi), shoot);
    double e = endpoint == 'a' ? mid.a : mid.b;

    FreeShotSummary s_lo = free_shot(fam, bracket.lo, mid.a, mid.b, shoot);
    FreeShotSummary s_hi = free_shot(fam, bracket.hi, mid.a, mid.b, shoot);
    int k = -1;
    if (s_lo.first_hit >= 0) k = s_lo.first_hit;
    if (s_hi.first_hit >= 0 && (k < 0 || s_hi.first_hit < k)) k = s_hi.first_hit;
    if (k < 0) throw NoSignChange("no bracket end captures into the flat arc");

    auto zeta = [&](const FreeShotSummary& s) {
        if ((int)s.crossings.size() <= k)
            throw NoSignChange("free separatrix lost before the reference crossing");
        return circle_signed(wrap_unit(s.crossings[(std::size_t)k].point.y), e);
    };
    double z_lo = zeta(s_lo), z_hi = zeta(s_hi);
    if (z_lo == 0.0 && z_hi == 0.0) throw NoSignChange("degenerate bracket");
    if (z_lo * z_hi > 0.0) throw NoSignChange("crossing distance does not change sign");

    double lo = bracket.lo, hi = bracket.hi;
    double z_cur = 0.0;
    double theta = 0.5 * (lo + hi);
    for (int it = 0; it < 80 && hi - lo > theta_tol; ++it) {
        theta = 0.5 * (lo + hi);
        FreeShotSummary s = free_shot(fam, theta, mid.a, mid.b, shoot);
        z_cur = zeta(s);
        if ((z_cur < 0.0) == (z_lo < 0.0))
            lo = theta;
        else
            hi = theta;
    }
    LoopResult out;
    out.theta = 0.5 * (lo + hi);
    out.crossing_index = k;
    out.endpoint = e;
    out.residual = std::fabs(z_cur);
    return out;
}

WindingReport winding_check(const FlowFamily& fam, double theta, double gamma_hat,
                            const ShootOptions& shoot) {
    WindingReport rep;
    rep.gamma_hat = gamma_hat;
    SeparatrixMarks m = separatrix_marks(fam, theta, shoot);
    FreeShotSummary fwd = free_shot(fam, theta, m.a, m.b, shoot);
    if (fwd.first_hit < 0) {
        rep.forward_returns = (int)fwd.crossings.size();
        return rep;  // no termination within budget; caller inspects
    }
    rep.forward_returns = fwd.first_hit + 1;
    rep.entry_point = wrap_unit(fwd.crossings[(std::size_t)fwd.first_hit].point.y);

    double da = circle_dist(rep.entry_point, m.a);
    double db = circle_dist(rep.entry_point, m.b);
    const double tol = 1e-6;
    if (da > tol && db > tol) {
        rep.terminated_at_flat_arc = true;  // Morse-Smale: strictly interior entry
        return rep;
    }
    rep.loop_confirmed = true;
    double e = da <= db ? m.a : m.b;

    // Free stable separatrix followed in reversed time: its crossings wind
    // onto the loop, contracting by the inverse of the loop monodromy.
    SeparatrixKind free_kind;
    {
        SeparatrixShot up = shoot_separatrix(fam, theta, SeparatrixKind::StableUpper, shoot);
        double first = up.crossings.empty() ? 1e9 : circle_dist(wrap_unit(up.crossings[0].point.y), e);
        free_kind = first < 1e-6 ? SeparatrixKind::StableLower : SeparatrixKind::StableUpper;
    }
    ShootOptions long_shoot = shoot;
    long_shoot.max_crossings = 40;
    SeparatrixShot sfree = shoot_separatrix(fam, theta, free_kind, long_shoot);
    for (const auto& cr : sfree.crossings)
        rep.distances.push_back(circle_dist(wrap_unit(cr.point.y), e));

    int grow = 0;
    for (std::size_t i = 0; i + 1 < rep.distances.size(); ++i) {
        double d0 = rep.distances[i], d1 = rep.distances[i + 1];
        if (d0 < 0.1 && d0 > 1e-9) {
            double r = d1 / d0;
            rep.ratios.push_back(r);
            grow = r > 1.05 ? grow + 1 : 0;
            if (grow >= 3) throw DivergenceDetected("crossing distances grew over 3 returns");
        }
    }
    if (!rep.ratios.empty()) {
        double logsum = 0.0;
        int n = 0;
        for (double r : rep.ratios) {
            if (n >= 5) break;
            logsum += std::log(r);
            ++n;
        }
        rep.rate = std::exp(logsum / n);
    }
    return rep;
}

}  // namespace cherry
