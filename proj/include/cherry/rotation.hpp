#pragma once

#include <optional>
#include <vector>

#include "cherry/flat_map.hpp"
#include "cherry/rational.hpp"

namespace cherry {

// Forward orbit of the critical value on the lift.
struct OrbitRecord {
    std::vector<double> points;        // lift values z_0 = c, z_1, ...
    std::vector<long long> wraps;      // per-step integer displacement floor
    std::optional<int> hit_index;      // first i with proj(z_i) in closed [a,b]
};

// Iterates c, f(c), ... reporting the first index whose circle projection
// lies in the closed flat arc; the orbit is then periodic since f^k(c) = c.
// A missing hit within max_iter is a valid outcome.
OrbitRecord critical_orbit(const FlatCircleMap& map, long max_iter);

struct RotationNumber {
    enum class Kind { Rational, Enclosure } kind;
    cherry::Rational rational;  // reduced, when kind == Rational
    int hit_index = -1;         // k-1 with f^(k-1)(c) in [a,b], when Rational
    cherry::Rational lo, hi;    // when kind == Enclosure

    double midpoint() const {
        return kind == Kind::Rational ? rational.value() : 0.5 * (lo.value() + hi.value());
    }
    double width() const { return kind == Kind::Rational ? 0.0 : farey_width(lo, hi); }
    bool is_rational() const { return kind == Kind::Rational; }
};

struct BudgetExhausted : Error {
    RotationNumber best;  // tightest enclosure reached
    explicit BudgetExhausted(RotationNumber b)
        : Error(ErrorClass::Numeric, "iteration budget exhausted before enclosure target"),
          best(std::move(b)) {}
};

// Exact rational via the critical-orbit hit test; otherwise Stern-Brocot
// refinement of a Farey enclosure using the sign of F^q(c) - c - p.
// max_iter bounds the lift evaluations of each phase.
RotationNumber rotation_number(const FlatCircleMap& map, long max_iter = 20000,
                               double enclosure_width = 1e-9);

enum class FieldTag { MorseSmale, LoopAtA, LoopAtB, IrrationalEnclosure };

struct FieldClass {
    FieldTag tag;
    RotationNumber rho;
    double last_intersection = -1.0;  // circle point in [a,b], rational case
};

struct ClassifyOptions {
    long max_iter = 20000;
    double enclosure_width = 1e-9;
    // Bisection delivers plateau endpoints to 1e-12 in theta and the map is
    // Hoelder-1/2 near the corners, so 1e-10 separates loops from interiors.
    double loop_tolerance = 1e-10;
};

// LoopAtA / LoopAtB when the last intersection meets a or b within the loop
// tolerance, MorseSmale strictly inside, IrrationalEnclosure otherwise.
// Throws AmbiguousAtTolerance when both endpoint tests fire.
FieldClass classify(const FlatCircleMap& map, const ClassifyOptions& opt = {});

const char* field_tag_name(FieldTag tag);

}  // namespace cherry
