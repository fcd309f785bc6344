#include "cherry/flow/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cherry {

MonotoneSpline::MonotoneSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("spline needs >= 2 knots");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("spline knots must increase");

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    m_.assign(n, 0.0);
    m_[0] = delta[0];
    m_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m_[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            m_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // Clamp end slopes (Fritsch-Carlson) to preserve monotonicity.
    for (std::size_t i : {std::size_t(0), n - 1}) {
        std::size_t j = i == 0 ? 0 : n - 2;
        if (delta[j] == 0.0)
            m_[i] = 0.0;
        else if (m_[i] / delta[j] > 3.0)
            m_[i] = 3.0 * delta[j];
        else if (m_[i] / delta[j] < 0.0)
            m_[i] = 0.0;
    }
}

std::size_t MonotoneSpline::segment(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    std::size_t i = (std::size_t)(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    return i - 1;
}

double MonotoneSpline::operator()(double x) const {
    if (x < x_.front()) return y_.front() + m_.front() * (x - x_.front());
    if (x > x_.back()) return y_.back() + m_.back() * (x - x_.back());
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
}

double MonotoneSpline::derivative(double x) const {
    if (x < x_.front()) return m_.front();
    if (x > x_.back()) return m_.back();
    std::size_t i = segment(x);
    double h = x_[i + 1] - x_[i];
    double t = (x - x_[i]) / h;
    double d00 = (6 * t * t - 6 * t) / h, d10 = 3 * t * t - 4 * t + 1;
    double d01 = (-6 * t * t + 6 * t) / h, d11 = 3 * t * t - 2 * t;
    return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

double MonotoneSpline::inverse(double y) const {
    if (!(y_.back() > y_.front())) throw std::invalid_argument("inverse needs increasing data");
    if (y <= y_.front()) return x_.front() + (y - y_.front()) / std::max(m_.front(), 1e-300);
    if (y >= y_.back()) return x_.back() + (y - y_.back()) / std::max(m_.back(), 1e-300);
    std::size_t i = (std::size_t)(std::upper_bound(y_.begin(), y_.end(), y) - y_.begin());
    if (i == 0) i = 1;
    if (i > x_.size() - 1) i = x_.size() - 1;
    double lo = x_[i - 1], hi = x_[i];
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
        double f = (*this)(x)-y;
        if (std::fabs(f) < 1e-15) break;
        if (f > 0)
            hi = x;
        else
            lo = x;
        double d = derivative(x);
        double step = d > 1e-14 ? x - f / d : 0.0;
        x = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
        if (hi - lo < 1e-16) break;
    }
    return x;
}

}  // namespace cherry
