#pragma once

#include <optional>
#include <vector>

#include "cherry/flow/field.hpp"

namespace cherry {

// Adaptive Dormand-Prince 5(4) on unwrapped torus coordinates; fields are
// evaluated mod 1 internally so lifts stay continuous.
class Integrator {
public:
    Integrator(FieldPtr field, IntegratorOptions opt, bool backward = false);

    struct Step {
        double t0, t1;
        Vec2 y0, y1;
        Vec2 f0, f1;  // derivatives in integration time
    };

    // One accepted adaptive step from the current state.
    std::optional<Step> step();

    const Vec2& state() const { return y_; }
    double time() const { return t_; }
    void reset(Vec2 y, double t = 0.0);
    // Forces the next step to the exact size h (still error-checked).
    bool step_exact(double h, Step* out = nullptr);

    Vec2 rhs(const Vec2& y) const;

private:
    FieldPtr field_;
    IntegratorOptions opt_;
    double dir_;
    Vec2 y_{};
    Vec2 f_{};  // FSAL derivative at y_
    double t_ = 0.0;
    double h_ = 0.0;
    bool attempt(double h, Vec2& y_out, Vec2& f_out, double& err);
};

struct CrossingEvent {
    Vec2 point;      // unwrapped coordinates at the crossing
    double t;        // signed integration time from the start
    long long wrap;  // floor(x) at the crossing: how often the orbit wound
};

struct CrossingOptions {
    double event_tol = 1e-10;  // position tolerance at the section
    double t_budget = 5000.0;
    // Stop when the orbit enters this radius around a marked point.
    std::optional<Vec2> capture_center;
    double capture_radius = 1e-3;
    std::optional<Vec2> stop_near_saddle;  // terminate on close saddle approach
    double saddle_radius = 1e-7;
    std::vector<Vec2>* trace = nullptr;  // optional decimated step trace
};

struct CrossingResult {
    std::vector<CrossingEvent> crossings;
    bool captured = false;        // entered the capture radius
    bool saddle_reached = false;  // approached the marked saddle
    Vec2 final_state;
    double final_time = 0.0;
};

// Follows the orbit of `start` (backward when backward = true), collecting up
// to max_crossings transversal crossings of the vertical line x = section_x
// (mod 1). Throws NoCrossing when the budget runs out with none found and
// none were requested optional.
CrossingResult follow_crossings(FieldPtr field, const IntegratorOptions& opt, Vec2 start,
                                double section_x, int max_crossings, const CrossingOptions& copt,
                                bool backward = false);

// First crossing only; throws NoCrossing when the orbit is captured or the
// budget is exhausted first.
CrossingEvent section_crossing(FieldPtr field, const IntegratorOptions& opt, Vec2 start,
                               double section_x, const CrossingOptions& copt,
                               bool backward = false);

}  // namespace cherry
