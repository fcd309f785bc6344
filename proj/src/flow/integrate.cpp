#include "cherry/flow/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace cherry {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

Vec2 axpy(const Vec2& y, double h, double c1, const Vec2& k1) {
    return {y.x + h * c1 * k1.x, y.y + h * c1 * k1.y};
}

}  // namespace

Integrator::Integrator(FieldPtr field, IntegratorOptions opt, bool backward)
    : field_(std::move(field)), opt_(opt), dir_(backward ? -1.0 : 1.0) {
    h_ = opt_.h_init;
}

Vec2 Integrator::rhs(const Vec2& y) const {
    Vec2 v = field_->eval(y.x, y.y);
    return {dir_ * v.x, dir_ * v.y};
}

void Integrator::reset(Vec2 y, double t) {
    y_ = y;
    t_ = t;
    f_ = rhs(y_);
    h_ = opt_.h_init;
}

bool Integrator::attempt(double h, Vec2& y_out, Vec2& f_out, double& err) {
    const Vec2& y = y_;
    Vec2 k1 = f_;
    Vec2 k2 = rhs(axpy(y, h, A21, k1));
    Vec2 y3{y.x + h * (A31 * k1.x + A32 * k2.x), y.y + h * (A31 * k1.y + A32 * k2.y)};
    Vec2 k3 = rhs(y3);
    Vec2 y4{y.x + h * (A41 * k1.x + A42 * k2.x + A43 * k3.x),
            y.y + h * (A41 * k1.y + A42 * k2.y + A43 * k3.y)};
    Vec2 k4 = rhs(y4);
    Vec2 y5{y.x + h * (A51 * k1.x + A52 * k2.x + A53 * k3.x + A54 * k4.x),
            y.y + h * (A51 * k1.y + A52 * k2.y + A53 * k3.y + A54 * k4.y)};
    Vec2 k5 = rhs(y5);
    Vec2 y6{y.x + h * (A61 * k1.x + A62 * k2.x + A63 * k3.x + A64 * k4.x + A65 * k5.x),
            y.y + h * (A61 * k1.y + A62 * k2.y + A63 * k3.y + A64 * k4.y + A65 * k5.y)};
    Vec2 k6 = rhs(y6);
    Vec2 y7{y.x + h * (B1 * k1.x + B3 * k3.x + B4 * k4.x + B5 * k5.x + B6 * k6.x),
            y.y + h * (B1 * k1.y + B3 * k3.y + B4 * k4.y + B5 * k5.y + B6 * k6.y)};
    Vec2 k7 = rhs(y7);

    double ex = h * (E1 * k1.x + E3 * k3.x + E4 * k4.x + E5 * k5.x + E6 * k6.x + E7 * k7.x);
    double ey = h * (E1 * k1.y + E3 * k3.y + E4 * k4.y + E5 * k5.y + E6 * k6.y + E7 * k7.y);
    double sx = opt_.abs_tol + opt_.rel_tol * std::max(std::fabs(y.x), std::fabs(y7.x));
    double sy = opt_.abs_tol + opt_.rel_tol * std::max(std::fabs(y.y), std::fabs(y7.y));
    err = std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ey / sy) * (ey / sy)));
    y_out = y7;
    f_out = k7;
    return err <= 1.0;
}

std::optional<Integrator::Step> Integrator::step() {
    for (int tries = 0; tries < 64; ++tries) {
        double h = std::clamp(h_, opt_.h_min, opt_.h_max);
        Vec2 y_new, f_new;
        double err;
        bool ok = attempt(h, y_new, f_new, err);
        double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        if (ok || h <= opt_.h_min * 1.0000001) {
            Step s{t_, t_ + h, y_, y_new, f_, f_new};
            y_ = y_new;
            f_ = f_new;
            t_ += h;
            h_ = h * factor;
            return s;
        }
        h_ = h * factor;
    }
    return std::nullopt;
}

bool Integrator::step_exact(double h, Step* out) {
    Vec2 y_new, f_new;
    double err;
    attempt(h, y_new, f_new, err);
    Step s{t_, t_ + h, y_, y_new, f_, f_new};
    y_ = y_new;
    f_ = f_new;
    t_ += h;
    if (out) *out = s;
    return true;
}

namespace {

bool inside_radius(const Vec2& z, const Vec2& center, double r) {
    double dx = z.x - center.x;
    dx -= std::round(dx);
    double dy = z.y - center.y;
    dy -= std::round(dy);
    return dx * dx + dy * dy < r * r;
}

}  // namespace

CrossingResult follow_crossings(FieldPtr field, const IntegratorOptions& opt, Vec2 start,
                                double section_x, int max_crossings, const CrossingOptions& copt,
                                bool backward) {
    Integrator integ(field, opt, backward);
    integ.reset(start);
    CrossingResult out;
    bool left_start_zone = false;

    while ((int)out.crossings.size() < max_crossings) {
        if (integ.time() > copt.t_budget) break;
        auto step = integ.step();
        if (!step) break;
        if (copt.trace && copt.trace->size() < 200000) copt.trace->push_back(step->y1);
        double x0 = step->y0.x, x1 = step->y1.x;

        // Next transversal level x = section_x + k strictly past the step
        // start, in the direction of x-motion. The section sits where the
        // horizontal component is bounded away from zero, so crossings are
        // simple; steps are short enough to contain at most one level.
        bool fwd_x = x1 >= x0;
        long long k = fwd_x ? (long long)std::floor(x0 - section_x - 1e-12) + 1
                            : (long long)std::ceil(x0 - section_x + 1e-12) - 1;
        double candidate = section_x + (double)k;
        bool hit = fwd_x ? candidate <= x1 : candidate >= x1;
        if (hit && x1 != x0) {
            double level = candidate;
            // Newton refinement on the step length toward the level.
            Integrator fine(field, opt, backward);
            fine.reset(step->y0, step->t0);
            double h = (step->t1 - step->t0) * (level - x0) / (x1 - x0);
            Vec2 z = step->y0;
            double t = step->t0;
            for (int it = 0; it < 60; ++it) {
                if (h != 0.0) {
                    fine.reset(z, t);
                    Integrator::Step sub;
                    fine.step_exact(h, &sub);
                    z = sub.y1;
                    t = sub.t1;
                }
                double miss = z.x - level;
                if (std::fabs(miss) <= copt.event_tol) break;
                double vx = fine.rhs(z).x;
                if (vx == 0.0) break;
                h = -miss / vx;
            }
            out.crossings.push_back({{level, z.y}, t, (long long)std::floor(level)});
            // Resume cleanly from the crossing.
            integ.reset(z, t);
            left_start_zone = false;
            continue;
        }

        if (copt.capture_center &&
            inside_radius(step->y1, *copt.capture_center, copt.capture_radius)) {
            out.captured = true;
            out.final_state = step->y1;
            out.final_time = step->t1;
            return out;
        }
        if (copt.stop_near_saddle) {
            bool near = inside_radius(step->y1, *copt.stop_near_saddle, copt.saddle_radius);
            if (near && left_start_zone) {
                out.saddle_reached = true;
                out.final_state = step->y1;
                out.final_time = step->t1;
                return out;
            }
            if (!near && !inside_radius(step->y1, *copt.stop_near_saddle, 1e-2))
                left_start_zone = true;
        }
    }
    out.final_state = integ.state();
    out.final_time = integ.time();
    return out;
}

CrossingEvent section_crossing(FieldPtr field, const IntegratorOptions& opt, Vec2 start,
                               double section_x, const CrossingOptions& copt, bool backward) {
    CrossingResult r = follow_crossings(field, opt, start, section_x, 1, copt, backward);
    if (r.crossings.empty()) {
        if (r.captured) throw NoCrossing("orbit captured before reaching the section");
        throw NoCrossing("time budget exhausted before the section");
    }
    return r.crossings.front();
}

}  // namespace cherry
