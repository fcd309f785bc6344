#pragma once

#include <cstddef>
#include <vector>

namespace cherry {

// Monotone cubic interpolant (Fritsch-Carlson slopes) on strictly increasing
// knots; stays monotone, evaluates its derivative, and inverts.
class MonotoneSpline {
public:
    MonotoneSpline() = default;
    MonotoneSpline(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;
    double inverse(double y) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    double y_min() const { return y_.front(); }
    double y_max() const { return y_.back(); }
    const std::vector<double>& knots_x() const { return x_; }
    const std::vector<double>& knots_y() const { return y_; }
    bool empty() const { return x_.empty(); }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_, y_, m_;
};

}  // namespace cherry
