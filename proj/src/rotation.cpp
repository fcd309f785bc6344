#include "cherry/rotation.hpp"

#include <cmath>
#include <numeric>

namespace cherry {

OrbitRecord critical_orbit(const FlatCircleMap& map, long max_iter) {
    if (max_iter < 1) throw Error(ErrorClass::Config, "critical_orbit: max_iter must be >= 1");
    OrbitRecord rec;
    rec.points.reserve(std::min<long>(max_iter + 1, 1 << 20));
    double z = map.critical();
    rec.points.push_back(z);
    for (long i = 0; i <= max_iter; ++i) {
        if (map.in_flat_arc(z)) {
            rec.hit_index = (int)i;
            break;
        }
        if (i == max_iter) break;
        double next = map.eval_lift(z);
        rec.wraps.push_back((long long)std::floor(next - z));
        rec.points.push_back(next);
        z = next;
    }
    return rec;
}

namespace {

RotationNumber rational_from_hit(const FlatCircleMap& map, const OrbitRecord& orbit) {
    int k = *orbit.hit_index;  // f^k(c) in [a,b], so f^(k+1)(c) = c
    double z_hit = orbit.points[(size_t)k];
    double z_back = map.eval_lift(z_hit);  // exact c + integer
    double disp = z_back - orbit.points[0];
    long long p = (long long)std::llround(disp);
    long long q = k + 1;
    RotationNumber r;
    r.kind = RotationNumber::Kind::Rational;
    r.rational = Rational(p, q);
    r.hit_index = k;
    r.lo = r.hi = r.rational;
    return r;
}

}  // namespace

RotationNumber rotation_number(const FlatCircleMap& map, long max_iter,
                               double enclosure_width) {
    if (!(enclosure_width > 0.0))
        throw Error(ErrorClass::Config, "enclosure width must be positive");
    OrbitRecord orbit = critical_orbit(map, max_iter);
    if (orbit.hit_index) return rational_from_hit(map, orbit);

    // Stern-Brocot refinement at y = c. A single-point sign is a valid
    // one-sided bound: a strict sign everywhere would force a periodic orbit
    // with that rotation number, so F^q(c) - c - p >= 0 implies rho >= p/q.
    const double c = map.critical();
    double f1 = map.eval_lift(c);
    long long n = (long long)std::floor(f1 - c);
    Rational lo(n, 1), hi(n + 1, 1);
    long budget = max_iter;
    while (farey_width(lo, hi) > enclosure_width) {
        Rational med = mediant(lo, hi);
        if (med.q > budget) {
            RotationNumber best;
            best.kind = RotationNumber::Kind::Enclosure;
            best.lo = lo;
            best.hi = hi;
            throw BudgetExhausted(best);
        }
        budget -= med.q;
        double s = map.iterate_lift(c, med.q) - c - (double)med.p;
        if (s >= 0.0)
            lo = med;
        else
            hi = med;
    }
    RotationNumber r;
    r.kind = RotationNumber::Kind::Enclosure;
    r.lo = lo;
    r.hi = hi;
    return r;
}

FieldClass classify(const FlatCircleMap& map, const ClassifyOptions& opt) {
    RotationNumber rho = rotation_number(map, opt.max_iter, opt.enclosure_width);
    if (!rho.is_rational()) return {FieldTag::IrrationalEnclosure, rho};

    OrbitRecord orbit = critical_orbit(map, rho.hit_index + 1);
    double z = orbit.points[(size_t)rho.hit_index];
    double u = z - std::floor(z - map.flat_a());  // in [a, a+1), actually [a, b]
    double da = u - map.flat_a();
    double db = map.flat_b() - u;
    FieldClass out{FieldTag::MorseSmale, rho, u};
    bool near_a = da <= opt.loop_tolerance;
    bool near_b = db <= opt.loop_tolerance;
    if (near_a && near_b) throw AmbiguousAtTolerance(u);
    if (near_a)
        out.tag = FieldTag::LoopAtA;
    else if (near_b)
        out.tag = FieldTag::LoopAtB;
    return out;
}

const char* field_tag_name(FieldTag tag) {
    switch (tag) {
        case FieldTag::MorseSmale: return "morse_smale";
        case FieldTag::LoopAtA: return "loop_at_a";
        case FieldTag::LoopAtB: return "loop_at_b";
        case FieldTag::IrrationalEnclosure: return "irrational_enclosure";
    }
    return "?";
}

}  // namespace cherry
