#include "cherry/flow/surgery.hpp"

#include <algorithm>
#include <cmath>

#include "cherry/circle.hpp"

namespace cherry {

namespace {

constexpr double kPi = 3.14159265358979323846;

// C^3 polynomial step, derivative 140 t^3 (1-t)^3.
double step7(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double t3 = t * t * t;
    return t3 * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t3);
}

double step7_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double u = t * (1.0 - t);
    return 140.0 * u * u * u;
}

class AffineRectifier : public Rectifier {
public:
    AffineRectifier(double omega, double x_sigma) : omega_(omega), xs_(x_sigma) {}
    double forward(double x, double y) const override { return y + omega_ * (xs_ - x); }
    double inverse(double x, double yhat) const override { return yhat - omega_ * (xs_ - x); }
    double d_inverse_dx(double, double) const override { return omega_; }
    double d_inverse_dyhat(double, double) const override { return 1.0; }

private:
    double omega_, xs_;
};

}  // namespace

RectifierPtr affine_rectifier(double omega, double x_sigma) {
    return std::make_shared<AffineRectifier>(omega, x_sigma);
}

MonodromySample measure_monodromy(const FlowFamily& fam, double theta, int n_grid,
                                  const ShootOptions& shoot) {
    MonodromySample out;
    out.theta = theta;
    out.marks = separatrix_marks(fam, theta, shoot);
    const SeparatrixMarks& m = out.marks;
    if (!(m.a < m.b))
        throw Error(ErrorClass::Numeric, "monodromy sampling requires an unwrapped flat arc");

    FieldPtr field = fam.at(theta);
    const double blen = m.a + 1.0 - m.b;
    CrossingOptions copt;
    copt.event_tol = fam.event_tol();
    copt.t_budget = fam.integ().t_max;
    copt.capture_center = m.sink;

    out.y.reserve((std::size_t)n_grid);
    out.image.reserve((std::size_t)n_grid);
    for (int i = 1; i <= n_grid; ++i) {
        double t = double(i) / (n_grid + 1);
        double s = 0.5 * (1.0 - std::cos(kPi * t));
        double y = m.b + blen * s;
        CrossingResult r =
            follow_crossings(field, fam.integ(), {fam.sigma_x(), y}, fam.sigma_x(), 1, copt,
                             false);
        if (r.crossings.empty()) continue;
        out.y.push_back(y);
        out.image.push_back(r.crossings.front().point.y);
    }
    if (out.y.size() < 16) throw NoCrossing("too few monodromy samples");

    out.min_slope = 1e300;
    for (std::size_t i = 0; i + 1 < out.y.size(); ++i)
        out.min_slope =
            std::min(out.min_slope, (out.image[i + 1] - out.image[i]) / (out.y[i + 1] - out.y[i]));
    return out;
}

FlatCircleMap std_bridge_target(const SeparatrixMarks& marks) {
    if (!(marks.a < marks.b))
        throw Error(ErrorClass::Numeric, "bridge target requires an unwrapped flat arc");
    double lam = std::clamp(marks.lambda, 0.05, 0.95);
    return make_beta_model(marks.a, marks.b, wrap_unit(marks.c), lam, lam);
}

namespace {

// Degree-one deformation family: phi_theta = (target + theta) o Delta_theta^{-1},
// with Delta_theta = Delta + theta known in closed form from the base sample.
struct PhiFamily {
    MonotoneSpline delta;                   // y -> arrival lift, base member
    MonotoneSpline target;                  // y -> target lift on the same knots
    double theta_base = 0.0;
    double w_lo = 0.0;                      // delta range start; period exactly 1

    double phi(double theta, double w) const {
        double wb = w - (theta - theta_base);
        double k = std::floor(wb - w_lo);
        double wr = wb - k;
        double u = delta.inverse(wr);
        return target(u) + (theta - theta_base) + k;
    }
    double phi_deriv(double theta, double w) const {
        double wb = w - (theta - theta_base);
        double wr = wb - std::floor(wb - w_lo);
        double u = delta.inverse(wr);
        double dd = delta.derivative(u);
        return target.derivative(u) / std::max(dd, 1e-12);
    }
};

struct Ramp {
    double x0, x1;  // step7 ramp 0 -> 1
    double operator()(double x) const { return step7((x - x0) / (x1 - x0)); }
    double deriv(double x) const { return step7_deriv((x - x0) / (x1 - x0)) / (x1 - x0); }
};

double solve_phi_s(const PhiFamily& pf, double theta, double s, double w, double dev) {
    // u with (1-s) u + s phi_theta(u) = w
    double lo = w - s * dev - 1e-9, hi = w + s * dev + 1e-9;
    auto f = [&](double u) { return (1.0 - s) * u + s * pf.phi(theta, u) - w; };
    double flo = f(lo), fhi = f(hi);
    for (int grow = 0; grow < 8 && flo > 0.0; ++grow) lo -= 0.25, flo = f(lo);
    for (int grow = 0; grow < 8 && fhi < 0.0; ++grow) hi += 0.25, fhi = f(hi);
    double u = w;
    for (int it = 0; it < 80; ++it) {
        u = 0.5 * (lo + hi);
        double fu = f(u);
        if (std::fabs(fu) < 1e-13) break;
        if (fu > 0.0)
            hi = u;
        else
            lo = u;
        if (hi - lo < 1e-15) break;
    }
    return u;
}

class SurgeredField : public TorusField {
public:
    SurgeredField(FieldPtr base, RectifierPtr rect, PhiFamily pf, Ramp sigma, double theta,
                  double x_hat, double x_sig, double dev)
        : base_(std::move(base)),
          rect_(std::move(rect)),
          pf_(std::move(pf)),
          sigma_(sigma),
          theta_(theta),
          x_hat_(x_hat),
          x_sig_(x_sig),
          dev_(dev) {}

    Vec2 eval(double x, double y) const override {
        double xw = wrap_unit(x);
        if (xw <= x_hat_ || xw >= x_sig_) return base_->eval(x, y);
        double s = sigma_(xw);
        double w = rect_->forward(xw, y);
        double sp = sigma_.deriv(xw);
        if (s == 0.0 && sp == 0.0) return base_->eval(x, y);
        double u0 = solve_phi_s(pf_, theta_, s, w, dev_);
        double dz_dx = sp * (pf_.phi(theta_, u0) - u0);
        double vy = rect_->d_inverse_dx(xw, w) + rect_->d_inverse_dyhat(xw, w) * dz_dx;
        return {1.0, vy};
    }

    // Arrival chart of the modified cylinder, for further surgeries.
    double arrival(double x, double y) const {
        double xw = wrap_unit(x);
        double w = rect_->forward(xw, y);
        double s = sigma_(xw);
        double u0 = solve_phi_s(pf_, theta_, s, w, dev_);
        return pf_.phi(theta_, u0);
    }
    double arrival_inverse(double x, double what) const {
        double xw = wrap_unit(x);
        double u = inverse_phi(what);
        double s = sigma_(xw);
        double z = (1.0 - s) * u + s * pf_.phi(theta_, u);
        return rect_->inverse(xw, z);
    }
    double inverse_phi(double what) const {
        // phi_theta is within dev of the identity; bisection suffices.
        double lo = what - dev_ - 1e-9, hi = what + dev_ + 1e-9;
        for (int it = 0; it < 90; ++it) {
            double u = 0.5 * (lo + hi);
            if (pf_.phi(theta_, u) > what)
                hi = u;
            else
                lo = u;
            if (hi - lo < 1e-15) break;
        }
        return 0.5 * (lo + hi);
    }
    const PhiFamily& pf() const { return pf_; }
    const RectifierPtr& base_rect() const { return rect_; }
    const Ramp& ramp() const { return sigma_; }
    double theta() const { return theta_; }
    double dev() const { return dev_; }

private:
    FieldPtr base_;
    RectifierPtr rect_;
    PhiFamily pf_;
    Ramp sigma_;
    double theta_, x_hat_, x_sig_, dev_;
};

class SurgeryRectifier : public Rectifier {
public:
    explicit SurgeryRectifier(std::shared_ptr<const SurgeredField> f) : f_(std::move(f)) {}
    double forward(double x, double y) const override { return f_->arrival(x, y); }
    double inverse(double x, double what) const override { return f_->arrival_inverse(x, what); }
    double d_inverse_dx(double x, double what) const override {
        double xw = wrap_unit(x);
        double u = f_->inverse_phi(what);
        double s = f_->ramp()(xw);
        double z = (1.0 - s) * u + s * f_->pf().phi(f_->theta(), u);
        double dz_dx = f_->ramp().deriv(xw) * (f_->pf().phi(f_->theta(), u) - u);
        return f_->base_rect()->d_inverse_dx(xw, z) +
               f_->base_rect()->d_inverse_dyhat(xw, z) * dz_dx;
    }
    double d_inverse_dyhat(double x, double what) const override {
        double xw = wrap_unit(x);
        double u = f_->inverse_phi(what);
        double s = f_->ramp()(xw);
        double z = (1.0 - s) * u + s * f_->pf().phi(f_->theta(), u);
        double dphi = f_->pf().phi_deriv(f_->theta(), u);
        double dz_du = (1.0 - s) + s * dphi;
        return f_->base_rect()->d_inverse_dyhat(xw, z) * dz_du / std::max(dphi, 1e-12);
    }

private:
    std::shared_ptr<const SurgeredField> f_;
};

}  // namespace

FenceResult fence_surgery(const FlowFamily& fam, const SurgeryTarget& target,
                          const SurgeryOptions& opt) {
    MonodromySample base = measure_monodromy(fam, opt.theta_base, opt.n_samples, opt.shoot);
    const SeparatrixMarks& m = base.marks;

    // Corner-pinned knot sets. The measured image spans exactly one period
    // between the separatrix limits.
    double c_lift = m.c + std::round(base.image.front() - m.c);
    std::vector<double> ky, kw, kt;
    ky.push_back(m.b);
    kw.push_back(c_lift);
    for (std::size_t i = 0; i < base.y.size(); ++i) {
        if (base.y[i] <= ky.back() + 1e-12) continue;
        if (base.image[i] <= kw.back() + 1e-12) continue;
        ky.push_back(base.y[i]);
        kw.push_back(base.image[i]);
    }
    ky.push_back(m.a + 1.0);
    kw.push_back(c_lift + 1.0);
    if (kw[kw.size() - 2] >= kw.back() - 1e-12) {
        ky.erase(ky.end() - 2);
        kw.erase(kw.end() - 2);
    }

    kt.reserve(ky.size());
    if (target.kind == SurgeryTarget::Kind::Monodromy) {
        if (!(base.min_slope > 1.0)) throw NotExpanding(base.min_slope);
        kt = kw;
    } else {
        const FlatCircleMap& bm = *target.bridge;
        if (!(bm.gamma() > 1.0)) throw NotExpanding(bm.gamma());
        double align_sum = 0.0;
        for (std::size_t i = 1; i + 1 < ky.size(); ++i)
            align_sum += kw[i] - bm.eval_lift(ky[i]);
        double k_align = std::round(align_sum / double(ky.size() - 2));
        for (double y : ky) kt.push_back(bm.eval_lift(y) + k_align);
    }

    PhiFamily pf;
    pf.delta = MonotoneSpline(ky, kw);
    pf.target = MonotoneSpline(ky, kt);
    pf.theta_base = opt.theta_base;
    pf.w_lo = kw.front();

    double dev = 0.0;
    for (std::size_t i = 0; i < kw.size(); ++i) dev = std::max(dev, std::fabs(kt[i] - kw[i]));

    double x_hat = fam.sigma_hat_x(), x_sig = fam.sigma_x();
    double wdt = x_sig - x_hat;
    Ramp sigma{x_hat + 0.15 * wdt, x_sig - 0.15 * wdt};

    FlowFamily base_fam = fam;
    auto maker = [base_fam, pf, sigma, x_hat, x_sig, dev](double theta) -> FieldPtr {
        return std::make_shared<SurgeredField>(base_fam.at(theta),
                                               base_fam.rectifier_at(theta), pf, sigma, theta,
                                               x_hat, x_sig, dev + 0.05);
    };
    FenceResult out{fam.wrap(maker, "+fence"), std::move(base), dev};
    auto rect_maker = [base_fam, pf, sigma, x_hat, x_sig, dev](double theta) -> RectifierPtr {
        auto f = std::make_shared<SurgeredField>(base_fam.at(theta),
                                                 base_fam.rectifier_at(theta), pf, sigma, theta,
                                                 x_hat, x_sig, dev + 0.05);
        return std::make_shared<SurgeryRectifier>(f);
    };
    out.family.set_rectifier(rect_maker);
    return out;
}

namespace {

class MonotonizedField : public TorusField {
public:
    MonotonizedField(FieldPtr base, double K, double theta, Ramp up, Ramp down, double d1,
                     double d2, double alpha)
        : base_(std::move(base)), k_(K), theta_(theta), up_(up), down_(down), d1_(d1), d2_(d2),
          alpha_(alpha) {}

    Vec2 eval(double x, double y) const override {
        Vec2 v = base_->eval(x, y);
        double xw = wrap_unit(x);
        double sig = up_(xw) * (1.0 - down_(xw));
        if (sig > 0.0) v.y += k_ * theta_ * sig * (1.0 - kappa(y));
        return v;
    }

    double kappa(double y) const {
        // 1 on the alpha/2-neighborhood of the arc [d1, d2], 0 outside the
        // alpha-neighborhood.
        double span = wrap_unit(d2_ - d1_);
        double off = wrap_unit(y - d1_);
        double dist = 0.0;
        if (off > span) dist = std::min(wrap_unit(y - d2_), 1.0 - off);
        if (dist <= 0.5 * alpha_) return 1.0;
        if (dist >= alpha_) return 0.0;
        return 1.0 - step7((dist - 0.5 * alpha_) / (0.5 * alpha_));
    }

private:
    FieldPtr base_;
    double k_, theta_;
    Ramp up_, down_;
    double d1_, d2_, alpha_;
};

}  // namespace

MonotonizeResult monotonize(const FlowFamily& fam, double K, const MonotonizeOptions& opt) {
    MonotonizeResult out{fam, 0, 0, 0, 0, {}, {}, {}};

    // Protected band: sweep of the free-separatrix crossing on Sigma-hat.
    double d1 = 1e300, d2 = -1e300;
    std::vector<double> chat((std::size_t)opt.n_theta_band);
    for (int i = 0; i < opt.n_theta_band; ++i) {
        double th = fam.theta_range().lo +
                    (fam.theta_range().hi - fam.theta_range().lo) * i / (opt.n_theta_band - 1.0);
        SeparatrixMarks m = separatrix_marks(fam, th, opt.shoot);
        chat[(std::size_t)i] = m.c_hat;
        d1 = std::min(d1, m.c_hat);
        d2 = std::max(d2, m.c_hat);
    }
    out.d1 = d1;
    out.d2 = d2;

    double x_hat = fam.sigma_hat_x(), x_sig = fam.sigma_x();
    double w = x_sig - x_hat;
    Ramp up{x_hat + 0.05 * w, x_hat + 0.45 * w};
    Ramp down{x_sig - 0.45 * w, x_sig - 0.05 * w};
    double alpha = opt.alpha;

    FlowFamily base_fam = fam;
    auto maker = [base_fam, K, up, down, d1, d2, alpha](double theta) -> FieldPtr {
        return std::make_shared<MonotonizedField>(base_fam.at(theta), K, theta, up, down, d1, d2,
                                                  alpha);
    };
    out.family = fam.wrap(maker, "+monotonize");

    if (K == 0.0) {
        out.min_direct = out.min_composed = 0.0;
        return out;
    }

    // Finite-difference certificate with the chain-rule decomposition
    // A + B C: A = dh/dtheta at g_theta(y), B = dh/dyhat, C = dg/dtheta.
    const double h = opt.fd_h;
    Interval tr = fam.theta_range();
    double min_direct = 1e300, min_comp = 1e300;
    std::vector<std::pair<double, double>> failing;

    auto cross_to = [&](const FlowFamily& f, double theta, double x_from, double y_from,
                        double x_to) {
        CrossingOptions copt;
        copt.event_tol = f.event_tol();
        copt.t_budget = f.integ().t_max;
        return section_crossing(f.at(theta), f.integ(), {x_from, y_from}, x_to, copt, false)
            .point.y;
    };

    for (int it = 0; it < opt.theta_grid; ++it) {
        double theta = tr.lo + h + (tr.hi - tr.lo - 2 * h) * it / (opt.theta_grid - 1.0);
        for (int iy = 0; iy < opt.y_grid; ++iy) {
            double y = (iy + 0.5) / opt.y_grid;
            double f_plus, f_minus, g0, g_plus, g_minus;
            try {
                f_plus = cross_to(out.family, theta + h, x_sig, y, x_sig + 1.0);
                f_minus = cross_to(out.family, theta - h, x_sig, y, x_sig + 1.0);
                g0 = cross_to(out.family, theta, x_sig, y, x_hat + 1.0);
                g_plus = cross_to(out.family, theta + h, x_sig, y, x_hat + 1.0);
                g_minus = cross_to(out.family, theta - h, x_sig, y, x_hat + 1.0);
            } catch (const NoCrossing&) {
                continue;  // flat-arc point: the extended value is handled separately
            }
            double direct = (f_plus - f_minus) / (2 * h);
            double a_term, b_term, c_term;
            double hp = cross_to(out.family, theta + h, x_hat + 1.0, g0, x_sig + 1.0);
            double hm = cross_to(out.family, theta - h, x_hat + 1.0, g0, x_sig + 1.0);
            a_term = (hp - hm) / (2 * h);
            double dy = 1e-6;
            double hyp = cross_to(out.family, theta, x_hat + 1.0, g0 + dy, x_sig + 1.0);
            double hym = cross_to(out.family, theta, x_hat + 1.0, g0 - dy, x_sig + 1.0);
            b_term = (hyp - hym) / (2 * dy);
            c_term = (g_plus - g_minus) / (2 * h);
            double composed = a_term + b_term * c_term;
            out.term_a.push_back(a_term);
            out.term_b.push_back(b_term);
            out.term_c.push_back(c_term);
            min_direct = std::min(min_direct, direct);
            min_comp = std::min(min_comp, composed);
            if (direct <= 0.0) failing.emplace_back(theta, y);
        }
    }
    out.min_direct = min_direct;
    out.min_composed = min_comp;
    if (!failing.empty()) throw MonotonicityNotAchieved(std::move(failing));
    return out;
}

double field_difference_sup(const FlowFamily& f1, const FlowFamily& f2, double theta, int grid) {
    FieldPtr a = f1.at(theta), b = f2.at(theta);
    double sup = 0.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            double x = (i + 0.5) / grid, y = (j + 0.5) / grid;
            Vec2 va = a->eval(x, y), vb = b->eval(x, y);
            sup = std::max(sup, std::hypot(va.x - vb.x, va.y - vb.y));
        }
    }
    return sup;
}

}  // namespace cherry
