#include "cherry/flow/chart.hpp"

#include <algorithm>
#include <cmath>

#include "cherry/circle.hpp"

namespace cherry {

namespace {

double step7(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double t3 = t * t * t;
    return t3 * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t3);
}

// 1 within eps/2 of the point (circle distance), 0 beyond eps.
double pin_bump(double y, double center, double eps) {
    double d = circle_dist(wrap_unit(y), wrap_unit(center));
    if (d <= 0.5 * eps) return 1.0;
    if (d >= eps) return 0.0;
    return 1.0 - step7((d - 0.5 * eps) / (0.5 * eps));
}

}  // namespace

NaturalChart::NaturalChart(const ParamCircleFamily& fam, double theta_ref, double eps)
    : fam_(fam), eps_(eps) {
    a_ref_ = fam.flat_a(theta_ref);
    b_ref_ = fam.flat_b(theta_ref);
}

double NaturalChart::to_chart(double theta, double y) const {
    double da = a_ref_ - fam_.flat_a(theta);
    double db = b_ref_ - fam_.flat_b(theta);
    return y + pin_bump(y, fam_.flat_a(theta), eps_) * da +
           pin_bump(y, fam_.flat_b(theta), eps_) * db;
}

double NaturalChart::from_chart(double theta, double yhat) const {
    double y = yhat;
    for (int it = 0; it < 60; ++it) {
        double f = to_chart(theta, y) - yhat;
        if (std::fabs(f) < 1e-14) break;
        y -= f;  // chart = identity + small pinned correction
    }
    return y;
}

double NaturalChart::eval_lift(double theta, double yhat) const {
    return to_chart(theta, fam_.eval_lift(theta, from_chart(theta, yhat)));
}

NaturalChartReport natural_chart_check(const ParamCircleFamily& fam, Interval theta_range,
                                       const NaturalChartOptions& opt) {
    double theta_ref = 0.5 * (theta_range.lo + theta_range.hi);
    NaturalChart chart(fam, theta_ref, opt.eps);
    NaturalChartReport rep;
    rep.a_ref = chart.a_ref();
    rep.b_ref = chart.b_ref();
    rep.min_dtheta_raw = 1e300;
    rep.min_dtheta_natural = 1e300;

    const double h = opt.fd_h;
    for (int it = 0; it < opt.theta_samples; ++it) {
        double theta = theta_range.lo + h +
                       (theta_range.hi - theta_range.lo - 2 * h) * it /
                           std::max(opt.theta_samples - 1, 1);

        // Probe set: interior points plus corner-adjacent points on the
        // moving (raw) and pinned (natural) corners respectively.
        std::vector<double> raw_probes, nat_probes;
        for (int i = 0; i < opt.y_samples; ++i) {
            double y = (i + 0.5) / opt.y_samples;
            raw_probes.push_back(y);
            nat_probes.push_back(y);
        }
        double a_t = fam.flat_a(theta), b_t = fam.flat_b(theta);
        for (double off : opt.corner_offsets) {
            raw_probes.push_back(b_t + off);
            raw_probes.push_back(a_t - off);
            nat_probes.push_back(chart.b_ref() + off);
            nat_probes.push_back(chart.a_ref() - off);
        }

        for (double y : raw_probes) {
            double d = (fam.eval_lift(theta + h, y) - fam.eval_lift(theta - h, y)) / (2 * h);
            rep.min_dtheta_raw = std::min(rep.min_dtheta_raw, d);
        }
        for (double yhat : nat_probes) {
            double d =
                (chart.eval_lift(theta + h, yhat) - chart.eval_lift(theta - h, yhat)) / (2 * h);
            rep.min_dtheta_natural = std::min(rep.min_dtheta_natural, d);
        }
        double closest = b_t + opt.corner_offsets.back();
        double d_close =
            (fam.eval_lift(theta + h, closest) - fam.eval_lift(theta - h, closest)) / (2 * h);
        rep.raw_at_closest_corner = std::min(rep.raw_at_closest_corner, d_close);
        rep.probes += (int)(raw_probes.size() + nat_probes.size());
    }
    return rep;
}

DulacFit dulac_corner_fit(const FlowFamily& fam, double theta0, const std::vector<double>& ladder,
                          double fd_h, const ShootOptions& shoot) {
    DulacFit fit;

    // Natural-chart monodromy to Sigma-hat: origin at b on the source circle
    // and at the free-separatrix crossing on the target circle.
    auto monodromy_hat = [&](double theta, double u) {
        SeparatrixMarks m = separatrix_marks(fam, theta, shoot);
        CrossingOptions copt;
        copt.event_tol = fam.event_tol();
        copt.t_budget = fam.integ().t_max;
        CrossingEvent ev = section_crossing(fam.at(theta), fam.integ(),
                                            {fam.sigma_x(), m.b + u}, fam.sigma_hat_x(), copt,
                                            false);
        return circle_signed(wrap_unit(ev.point.y), m.c_hat);
    };

    SeparatrixMarks m0 = separatrix_marks(fam, theta0, shoot);
    fit.lambda_saddle = m0.lambda;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx, ly;
    for (double u : ladder) {
        double dp = monodromy_hat(theta0 + fd_h, u);
        double dm = monodromy_hat(theta0 - fd_h, u);
        double dt = (dp - dm) / (2 * fd_h);
        fit.rows.push_back({u, dt});
        double x = std::log(u);
        double y = std::log(std::max(std::fabs(dt), 1e-300)) - std::log(std::fabs(std::log(u)));
        lx.push_back(x);
        ly.push_back(y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    int n = (int)ladder.size();
    if (n < 3) throw Error(ErrorClass::Config, "dulac ladder needs >= 3 rungs");
    fit.lambda_fit = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - fit.lambda_fit * sx) / n;
    fit.c_const = std::exp(intercept);

    // Local slopes should not run away as u -> 0.
    for (int i = 0; i + 1 < n; ++i) {
        double local = (ly[(size_t)i + 1] - ly[(size_t)i]) / (lx[(size_t)i + 1] - lx[(size_t)i]);
        fit.max_local_slope_dev = std::max(fit.max_local_slope_dev,
                                           std::fabs(local - fit.lambda_fit));
    }
    if (fit.max_local_slope_dev > 1.0)
        throw CornerFitFailed("local exponent drifts by " +
                              std::to_string(fit.max_local_slope_dev));
    return fit;
}

}  // namespace cherry
