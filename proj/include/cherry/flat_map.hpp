#pragma once

#include <string>

#include "cherry/errors.hpp"

namespace cherry {

// Extended Poincare map of a class-N field: a degree-one monotone circle map
// that is constant (= c) on the flat arc [a,b] and lifts to an expanding
// bijection from the bridge [b, a+1] onto [c, c+1].
//
// The bridge is the normalized integral of the density
//     w(s) ~ s^(lambda_b - 1) * (1 - s)^(lambda_a - 1),   s = (y - b)/L,
// rescaled to the bridge of length L = a + 1 - b. Corner exponents below 1
// force F' -> +inf at both bridge ends; the minimum slope gamma is attained
// at an interior point and has a closed form.
//
// Immutable after construction; every operation is pure.
class FlatCircleMap {
public:
    double flat_a() const { return a_; }
    double flat_b() const { return b_; }
    double critical() const { return c_; }          // in [0,1)
    int lift_offset() const { return offset_; }
    double critical_lift() const { return c_ + offset_; }
    double lambda_b() const { return lb_; }
    double lambda_a() const { return la_; }
    double bridge_length() const { return len_; }
    double gamma() const { return gamma_; }
    const char* model_id() const { return "beta"; }

    // Lift value F(y); exactly c + k on flat-arc translates.
    double eval_lift(double y) const;

    // n-fold composition of the lift, n >= 0.
    double iterate_lift(double y, long n) const;

    // F'(y): 0 strictly inside the flat arc, the density value on the bridge
    // interior, +inf within corner_tolerance of a bridge corner.
    // Throws UndefinedAtCorner at y == a or y == b (mod 1).
    double derivative(double y) const;

    // Unique bridge preimage in [b, a+1] of the lift value z; the closed ends
    // map exactly: z = c -> b and z = c + 1 -> a + 1.
    double bridge_inverse(double z) const;

    // True when the circle projection of y lies in the closed flat arc.
    bool in_flat_arc(double y) const;

    // Regularized bridge profile and its density on s in [0,1].
    double bridge_cdf(double s) const;
    double bridge_quantile(double u) const;
    double bridge_density(double s) const;

    static constexpr double corner_tolerance = 1e-14;

    friend FlatCircleMap make_beta_model(double a, double b, double c, double lambda_b,
                                         double lambda_a, int lift_offset);

private:
    FlatCircleMap() = default;

    double a_ = 0, b_ = 0, c_ = 0;
    int offset_ = 0;
    double lb_ = 0.5, la_ = 0.5;
    double len_ = 0;       // a + 1 - b
    double gamma_ = 0;     // min bridge slope
    double log_beta_ = 0;  // log B(lambda_b, lambda_a)
    bool arcsine_ = true;  // closed form for lambda_b = lambda_a = 1/2
};

// Builds a map satisfying all class invariants; records gamma analytically.
// Throws ExpansivityViolated when the minimum bridge slope is <= 1.
FlatCircleMap make_beta_model(double a, double b, double c, double lambda_b, double lambda_a,
                              int lift_offset = 0);

}  // namespace cherry
