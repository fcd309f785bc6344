#pragma once

#include <functional>
#include <memory>
#include <string>

#include "cherry/errors.hpp"
#include "cherry/intervals.hpp"

namespace cherry {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Smooth vector field on the torus, doubly periodic in (x, y). Implementations
// accept unwrapped coordinates and reduce internally.
class TorusField {
public:
    virtual ~TorusField() = default;
    virtual Vec2 eval(double x, double y) const = 0;
};

using FieldPtr = std::shared_ptr<const TorusField>;

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

// 0 outside [x0, x3], 1 on [x1, x2], monotone ramps between.
double plateau_bump(double x, double x0, double x1, double x2, double x3);

struct IntegratorOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-13;
    double h_max = 0.05;
    double t_max = 5000.0;
};

struct StripFamilyParams {
    double omega = 0.40;           // base slope outside the strip
    double strip_lo = 0.05;        // strip containing all theta-dependence
    double strip_hi = 0.64;
    double sigma_x = 0.80;         // transversal
    double sigma_hat_x = 0.70;     // auxiliary transversal, crossed first
    double theta_lo = 0.0;
    double theta_hi = 1.0;

    double y0 = 0.5;               // equilibria line
    double mu = 4.0;               // saddle unstable eigenvalue
    double nu = 2.0;               // saddle stable eigenvalue magnitude
    double kappa2 = 4.0;           // vertical localization of the cell
    double cell_frac = 0.55;       // share of the strip given to the cell

    double nu_theta_slope = 0.0;   // nu(theta) = nu * (1 + slope * theta)
    double remark_shift = 0.0;     // precompose vertical shift by eps * theta

    IntegratorOptions integ;
    double event_tol = 1e-10;
};

class Rectifier;

// One-parameter family of torus fields with marked transversals and seeds.
class FlowFamily {
public:
    using Maker = std::function<FieldPtr(double)>;
    using RectMaker = std::function<std::shared_ptr<const Rectifier>(double)>;

    FlowFamily(Maker maker, double sigma_x, double sigma_hat_x, Vec2 saddle_seed, Vec2 sink_seed,
               Interval theta_range, IntegratorOptions integ, double event_tol,
               std::string name);

    FieldPtr at(double theta) const { return maker_(theta); }

    double sigma_x() const { return sigma_x_; }
    double sigma_hat_x() const { return sigma_hat_x_; }
    Vec2 saddle_seed() const { return saddle_seed_; }
    Vec2 sink_seed() const { return sink_seed_; }
    Interval theta_range() const { return range_; }
    const IntegratorOptions& integ() const { return integ_; }
    double event_tol() const { return event_tol_; }
    const std::string& name() const { return name_; }

    // Same marks, new per-theta field construction.
    FlowFamily wrap(Maker maker, const std::string& suffix) const;

    // Arrival-coordinate chart of the cylinder between the transversals;
    // strip families install the affine one, surgery composes onto it.
    void set_rectifier(RectMaker rm) { rectifier_ = std::move(rm); }
    std::shared_ptr<const Rectifier> rectifier_at(double theta) const;

private:
    Maker maker_;
    double sigma_x_, sigma_hat_x_;
    Vec2 saddle_seed_, sink_seed_;
    Interval range_;
    IntegratorOptions integ_;
    double event_tol_;
    std::string name_;
    RectMaker rectifier_;
};

// Field constant (1, omega) outside the strip; inside, a localized cell with
// one saddle (positive trace) and one sink on a horizontal line, plus a
// normalized vertical shear carrying the parameter action, so the return map
// obeys f_theta = f_0 + theta exactly and fields agree outside the strip for
// all theta.
FlowFamily make_strip_family(const StripFamilyParams& params = {});

FlowFamily make_strip_family(double omega, Interval strip, Interval theta_range);

// Geometry of the shipped construction, exposed for validators and tests.
struct StripGeometry {
    double x_sink, x_saddle;       // on the line y = y0
    double cell_lo, cell_hi;       // support of the cell bump
    double shear_lo, shear_hi;     // support of the parameter shear
};
StripGeometry strip_geometry(const StripFamilyParams& params);

}  // namespace cherry
