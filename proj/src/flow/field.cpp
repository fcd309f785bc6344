#include "cherry/flow/field.hpp"

#include "cherry/flow/surgery.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "cherry/circle.hpp"

namespace cherry {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double e0 = std::exp(-1.0 / t);
    double e1 = std::exp(-1.0 / (1.0 - t));
    return e0 / (e0 + e1);
}

double plateau_bump(double x, double x0, double x1, double x2, double x3) {
    if (x <= x0 || x >= x3) return 0.0;
    if (x < x1) return smooth_step((x - x0) / (x1 - x0));
    if (x <= x2) return 1.0;
    return smooth_step((x3 - x) / (x3 - x2));
}

FlowFamily::FlowFamily(Maker maker, double sigma_x, double sigma_hat_x, Vec2 saddle_seed,
                       Vec2 sink_seed, Interval theta_range, IntegratorOptions integ,
                       double event_tol, std::string name)
    : maker_(std::move(maker)),
      sigma_x_(sigma_x),
      sigma_hat_x_(sigma_hat_x),
      saddle_seed_(saddle_seed),
      sink_seed_(sink_seed),
      range_(theta_range),
      integ_(integ),
      event_tol_(event_tol),
      name_(std::move(name)) {}

FlowFamily FlowFamily::wrap(Maker maker, const std::string& suffix) const {
    FlowFamily out = *this;
    out.maker_ = std::move(maker);
    out.name_ = name_ + suffix;
    return out;
}

std::shared_ptr<const Rectifier> FlowFamily::rectifier_at(double theta) const {
    if (!rectifier_) throw Error(ErrorClass::Numeric, "family has no cylinder rectifier");
    return rectifier_(theta);
}

StripGeometry strip_geometry(const StripFamilyParams& p) {
    StripGeometry g;
    double w = p.strip_hi - p.strip_lo;
    g.cell_lo = p.strip_lo + 0.01 * w;
    g.cell_hi = p.strip_lo + p.cell_frac * w;
    double cw = g.cell_hi - g.cell_lo;
    double plat_lo = g.cell_lo + 0.25 * cw;
    double plat_hi = g.cell_hi - 0.25 * cw;
    g.x_sink = plat_lo + 0.30 * (plat_hi - plat_lo);
    g.x_saddle = plat_hi - 0.30 * (plat_hi - plat_lo);
    g.shear_lo = p.strip_lo + (p.cell_frac + 0.05) * w;
    g.shear_hi = p.strip_hi - 0.01 * w;
    return g;
}

namespace {

// v = (1, omega) + phi1(x) phi2(y) (u - (1, omega)) + theta psi(x) e_y with
// u_x = C (x - xP)(x - xO) on the cell, u_y = -(nu/2pi) sin(2pi (y - y0)).
// The horizontal line y = y0 is invariant across the phi1-plateau and carries
// exactly the two zeros: a saddle at xP with eigenvalues (+mu, -nu) and a
// sink at xO with (-mu, -nu).
class StripField : public TorusField {
public:
    StripField(const StripFamilyParams& p, double theta) : p_(p), theta_(theta) {
        g_ = strip_geometry(p);
        double cw = g_.cell_hi - g_.cell_lo;
        plat_lo_ = g_.cell_lo + 0.25 * cw;
        plat_hi_ = g_.cell_hi - 0.25 * cw;
        nu_eff_ = p.nu * (1.0 + p.nu_theta_slope * theta);
        cx_ = p.mu / (g_.x_saddle - g_.x_sink);
        // Simpson normalization of the shear bump so theta enters the return
        // map with unit coefficient.
        const int n = 4000;
        double h = (g_.shear_hi - g_.shear_lo) / n;
        double s = 0.0;
        for (int i = 0; i <= n; ++i) {
            double x = g_.shear_lo + i * h;
            double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s += wgt * raw_shear(x);
        }
        shear_norm_ = s * h / 3.0;
    }

    Vec2 eval(double x, double y) const override {
        double xw = wrap_unit(x);
        double vx = 1.0;
        double vy = p_.omega;
        double yc = y - p_.remark_shift * theta_;
        double p1 = plateau_bump(xw, g_.cell_lo, plat_lo_, plat_hi_, g_.cell_hi);
        if (p1 > 0.0) {
            double ang = kTwoPi * (yc - p_.y0);
            double p2 = std::exp(p_.kappa2 * (std::cos(ang) - 1.0));
            double w = p1 * p2;
            double ux = cx_ * (xw - g_.x_saddle) * (xw - g_.x_sink);
            double uy = -(nu_eff_ / kTwoPi) * std::sin(ang);
            vx += w * (ux - 1.0);
            vy += w * (uy - p_.omega);
        }
        vy += theta_ * raw_shear(xw) / shear_norm_;
        return {vx, vy};
    }

private:
    double raw_shear(double x) const {
        double r0 = g_.shear_lo, r1 = g_.shear_hi;
        double m = 0.25 * (r1 - r0);
        return plateau_bump(x, r0, r0 + m, r1 - m, r1);
    }

    StripFamilyParams p_;
    double theta_;
    StripGeometry g_;
    double plat_lo_, plat_hi_;
    double nu_eff_, cx_, shear_norm_;
};

}  // namespace

FlowFamily make_strip_family(const StripFamilyParams& p) {
    if (!(p.strip_lo < p.strip_hi && p.strip_hi < p.sigma_hat_x && p.sigma_hat_x < p.sigma_x))
        throw Error(ErrorClass::Config,
                    "strip must precede sigma_hat and sigma and be disjoint from both");
    StripGeometry g = strip_geometry(p);
    auto maker = [p](double theta) -> FieldPtr { return std::make_shared<StripField>(p, theta); };
    char buf[120];
    std::snprintf(buf, sizeof buf, "strip(omega=%.17g,[%g,%g])", p.omega, p.strip_lo, p.strip_hi);
    FlowFamily fam(maker, p.sigma_x, p.sigma_hat_x, {g.x_saddle, p.y0}, {g.x_sink, p.y0},
                   {p.theta_lo, p.theta_hi}, p.integ, p.event_tol, buf);
    double omega = p.omega, sx = p.sigma_x;
    fam.set_rectifier([omega, sx](double) { return affine_rectifier(omega, sx); });
    return fam;
}

FlowFamily make_strip_family(double omega, Interval strip, Interval theta_range) {
    StripFamilyParams p;
    p.omega = omega;
    p.strip_lo = strip.lo;
    p.strip_hi = strip.hi;
    p.theta_lo = theta_range.lo;
    p.theta_hi = theta_range.hi;
    return make_strip_family(p);
}

}  // namespace cherry
