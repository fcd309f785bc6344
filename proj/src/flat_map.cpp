#include "cherry/flat_map.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "cherry/circle.hpp"

namespace cherry {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double FlatCircleMap::bridge_cdf(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    if (arcsine_) return (2.0 / kPi) * std::asin(std::sqrt(s));
    return boost::math::ibeta(lb_, la_, s);
}

double FlatCircleMap::bridge_quantile(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (arcsine_) {
        double t = std::sin(0.5 * kPi * u);
        return t * t;
    }
    return boost::math::ibeta_inv(lb_, la_, u);
}

double FlatCircleMap::bridge_density(double s) const {
    if (s <= 0.0 || s >= 1.0) return std::numeric_limits<double>::infinity();
    return std::exp((lb_ - 1.0) * std::log(s) + (la_ - 1.0) * std::log1p(-s) - log_beta_);
}

double FlatCircleMap::eval_lift(double y) const {
    double m = std::floor(y - a_);
    double u = y - m;  // in [a, a+1)
    // The integer part is added last so F(y+1) = F(y) + 1 holds exactly.
    double base = c_ + offset_;
    if (u > b_) base += bridge_cdf((u - b_) / len_);
    return base + m;
}

double FlatCircleMap::iterate_lift(double y, long n) const {
    for (long i = 0; i < n; ++i) y = eval_lift(y);
    return y;
}

bool FlatCircleMap::in_flat_arc(double y) const {
    double u = y - std::floor(y - a_);
    return u <= b_;
}

double FlatCircleMap::derivative(double y) const {
    double m = std::floor(y - a_);
    double u = y - m;
    if (u == a_ || u == b_) throw UndefinedAtCorner(u);
    if (u < b_) return 0.0;
    double from_b = u - b_;
    double from_a1 = (a_ + 1.0) - u;
    if (from_b < corner_tolerance || from_a1 < corner_tolerance)
        return std::numeric_limits<double>::infinity();
    return bridge_density(from_b / len_) / len_;
}

double FlatCircleMap::bridge_inverse(double z) const {
    double d = z - (c_ + offset_);
    double m = std::floor(d);
    double u = d - m;
    if (u == 0.0) return d <= 0.0 ? b_ : a_ + 1.0;
    return b_ + len_ * bridge_quantile(u);
}

FlatCircleMap make_beta_model(double a, double b, double c, double lambda_b, double lambda_a,
                              int lift_offset) {
    if (!(0.0 <= a && a < b && b < 1.0))
        throw Error(ErrorClass::Config, "flat arc must satisfy 0 <= a < b < 1");
    if (!(0.0 <= c && c < 1.0))
        throw Error(ErrorClass::Config, "critical value must lie in [0,1)");
    if (!(lambda_b > 0.0 && lambda_b < 1.0 && lambda_a > 0.0 && lambda_a < 1.0))
        throw Error(ErrorClass::Config, "corner exponents must lie in (0,1)");

    FlatCircleMap m;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.offset_ = lift_offset;
    m.lb_ = lambda_b;
    m.la_ = lambda_a;
    m.len_ = a + 1.0 - b;
    m.arcsine_ = (lambda_b == 0.5 && lambda_a == 0.5);
    m.log_beta_ = boost::math::lgamma(lambda_b) + boost::math::lgamma(lambda_a) -
                  boost::math::lgamma(lambda_b + lambda_a);

    // The density is convex with poles at both ends; its interior minimum is
    // at s* = (1-lambda_b) / ((1-lambda_b) + (1-lambda_a)).
    double s_star = (1.0 - lambda_b) / ((1.0 - lambda_b) + (1.0 - lambda_a));
    m.gamma_ = m.bridge_density(s_star) / m.len_;
    if (!(m.gamma_ > 1.0)) throw ExpansivityViolated(m.gamma_);
    return m;
}

}  // namespace cherry
