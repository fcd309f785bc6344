#include "cherry/flow/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "cherry/circle.hpp"

namespace cherry {

Jacobian2 field_jacobian(const FieldPtr& field, Vec2 z, double h) {
    Vec2 fxp = field->eval(z.x + h, z.y), fxm = field->eval(z.x - h, z.y);
    Vec2 fyp = field->eval(z.x, z.y + h), fym = field->eval(z.x, z.y - h);
    return {(fxp.x - fxm.x) / (2 * h), (fyp.x - fym.x) / (2 * h), (fxp.y - fxm.y) / (2 * h),
            (fyp.y - fym.y) / (2 * h)};
}

std::array<EigenPair, 2> real_eigen(const Jacobian2& j) {
    double tr = j.trace(), det = j.det();
    double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) throw Error(ErrorClass::Numeric, "complex eigenvalues");
    double s = std::sqrt(disc);
    std::array<EigenPair, 2> out;
    for (int i = 0; i < 2; ++i) {
        double lam = 0.5 * (tr + (i == 0 ? s : -s));
        // Pick the better-conditioned row for the eigenvector.
        Vec2 v;
        if (std::fabs(j.a12) + std::fabs(lam - j.a11) >
            std::fabs(j.a21) + std::fabs(lam - j.a22)) {
            v = {j.a12, lam - j.a11};
        } else {
            v = {lam - j.a22, j.a21};
        }
        double n = std::hypot(v.x, v.y);
        if (n == 0.0) v = {1.0, 0.0}, n = 1.0;
        out[(size_t)i] = {lam, {v.x / n, v.y / n}};
    }
    return out;
}

Vec2 find_equilibrium(const FieldPtr& field, Vec2 seed, double tol) {
    Vec2 z = seed;
    for (int it = 0; it < 80; ++it) {
        Vec2 v = field->eval(z.x, z.y);
        double norm = std::hypot(v.x, v.y);
        if (norm < tol) return z;
        Jacobian2 j = field_jacobian(field, z);
        double det = j.det();
        if (det == 0.0) break;
        double dx = (v.x * j.a22 - v.y * j.a12) / det;
        double dy = (v.y * j.a11 - v.x * j.a21) / det;
        // Damped step away from the quadratic basin.
        double cap = 0.05;
        double len = std::hypot(dx, dy);
        if (len > cap) {
            dx *= cap / len;
            dy *= cap / len;
        }
        z.x -= dx;
        z.y -= dy;
    }
    Vec2 v = field->eval(z.x, z.y);
    if (std::hypot(v.x, v.y) < 1e-9) return z;
    throw SaddleNotFound("Newton stalled at |v| = " + std::to_string(std::hypot(v.x, v.y)));
}

std::vector<Vec2> locate_equilibria(const FieldPtr& field, int grid) {
    // Coarse residual scan; Newton from the most promising cells.
    std::vector<std::pair<double, Vec2>> seeds;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            double x = (i + 0.5) / grid, y = (j + 0.5) / grid;
            Vec2 v = field->eval(x, y);
            seeds.push_back({std::hypot(v.x, v.y), {x, y}});
        }
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Vec2> zeros;
    int tried = 0;
    for (const auto& [norm, seed] : seeds) {
        if (tried++ > 200) break;
        try {
            Vec2 z = find_equilibrium(field, seed);
            z.x = wrap_unit(z.x);
            z.y = wrap_unit(z.y);
            bool dup = false;
            for (const auto& w : zeros)
                if (circle_dist(w.x, z.x) < 1e-6 && circle_dist(w.y, z.y) < 1e-6) dup = true;
            if (!dup) zeros.push_back(z);
        } catch (const SaddleNotFound&) {
        }
    }
    return zeros;
}

namespace {

Vec2 saddle_of(const FlowFamily& fam, double theta) {
    return find_equilibrium(fam.at(theta), fam.saddle_seed());
}

}  // namespace

SeparatrixShot shoot_separatrix(const FlowFamily& fam, double theta, SeparatrixKind kind,
                                const ShootOptions& opt) {
    FieldPtr field = fam.at(theta);
    Vec2 saddle = saddle_of(fam, theta);
    auto eig = real_eigen(field_jacobian(field, saddle));
    EigenPair unstable = eig[0].value > eig[1].value ? eig[0] : eig[1];
    EigenPair stable = eig[0].value > eig[1].value ? eig[1] : eig[0];
    if (!(unstable.value > 0.0 && stable.value < 0.0))
        throw SaddleNotFound("seed equilibrium is not a saddle");

    bool backward = (kind == SeparatrixKind::StableUpper || kind == SeparatrixKind::StableLower);
    Vec2 dir{};
    if (backward) {
        dir = stable.vector;
        if ((kind == SeparatrixKind::StableUpper) != (dir.y > 0)) dir = {-dir.x, -dir.y};
    } else {
        // The free unstable branch leaves toward the transversals; the other
        // one is captured by the sink. Identified by a short probe.
        dir = unstable.vector;
        Vec2 sink = find_equilibrium(field, fam.sink_seed());
        auto probe = [&](Vec2 d) {
            CrossingOptions copt;
            copt.event_tol = fam.event_tol();
            copt.t_budget = 80.0;
            copt.capture_center = sink;
            Vec2 z0{saddle.x + opt.offset * d.x, saddle.y + opt.offset * d.y};
            CrossingResult r =
                follow_crossings(field, fam.integ(), z0, fam.sigma_hat_x(), 1, copt, false);
            return !r.crossings.empty();  // reached Sigma-hat: the free branch
        };
        bool plus_free = probe(dir);
        bool want_free = (kind == SeparatrixKind::UnstableFree);
        if (plus_free != want_free) dir = {-dir.x, -dir.y};
    }

    SeparatrixShot shot;
    shot.kind = kind;
    shot.saddle = saddle;
    Vec2 z0{saddle.x + opt.offset * dir.x, saddle.y + opt.offset * dir.y};

    CrossingOptions copt;
    copt.event_tol = fam.event_tol();
    copt.t_budget = opt.t_budget;
    copt.trace = &shot.polyline;
    if (!backward) {
        copt.capture_center = find_equilibrium(field, fam.sink_seed());
        copt.capture_radius = opt.capture_radius;
        copt.stop_near_saddle = saddle;
    }
    CrossingResult r = follow_crossings(field, fam.integ(), z0, fam.sigma_x(), opt.max_crossings,
                                        copt, backward);
    shot.crossings = std::move(r.crossings);
    shot.captured = r.captured;
    shot.saddle_reached = r.saddle_reached;
    return shot;
}

SeparatrixMarks separatrix_marks(const FlowFamily& fam, double theta, const ShootOptions& opt) {
    FieldPtr field = fam.at(theta);
    SeparatrixMarks m{};
    m.saddle = saddle_of(fam, theta);
    m.sink = find_equilibrium(field, fam.sink_seed());
    auto eig = real_eigen(field_jacobian(field, m.saddle));
    EigenPair unstable = eig[0].value > eig[1].value ? eig[0] : eig[1];
    EigenPair stable = eig[0].value > eig[1].value ? eig[1] : eig[0];
    m.trace = unstable.value + stable.value;
    m.lambda = -stable.value / unstable.value;

    SeparatrixShot up = shoot_separatrix(fam, theta, SeparatrixKind::StableUpper, opt);
    SeparatrixShot dn = shoot_separatrix(fam, theta, SeparatrixKind::StableLower, opt);
    SeparatrixShot free = shoot_separatrix(fam, theta, SeparatrixKind::UnstableFree, opt);
    if (up.crossings.empty() || dn.crossings.empty() || free.crossings.empty())
        throw NoCrossing("separatrix failed to reach the transversal");
    double y1 = wrap_unit(up.crossings.front().point.y);
    double y2 = wrap_unit(dn.crossings.front().point.y);
    m.c = wrap_unit(free.crossings.front().point.y);

    // Orient the flat arc: its interior flows to the sink without returning.
    double mid12 = wrap_unit(y1 + 0.5 * (wrap_unit(y2 - y1)));
    CrossingOptions copt;
    copt.event_tol = fam.event_tol();
    copt.t_budget = 60.0;
    copt.capture_center = m.sink;
    CrossingResult probe = follow_crossings(field, fam.integ(), {fam.sigma_x(), mid12},
                                            fam.sigma_x(), 1, copt, false);
    bool arc12_flat = probe.captured && probe.crossings.empty();
    if (arc12_flat) {
        m.a = y1;
        m.b = y2;
    } else {
        m.a = y2;
        m.b = y1;
    }

    // First crossing of the free branch on the auxiliary circle.
    CrossingOptions hatopt;
    hatopt.event_tol = fam.event_tol();
    hatopt.t_budget = opt.t_budget;
    hatopt.capture_center = m.sink;
    Vec2 z0{m.saddle.x + opt.offset * unstable.vector.x,
            m.saddle.y + opt.offset * unstable.vector.y};
    CrossingResult hat = follow_crossings(field, fam.integ(), z0, fam.sigma_hat_x(), 1, hatopt,
                                          false);
    if (hat.crossings.empty()) {
        Vec2 z1{m.saddle.x - opt.offset * unstable.vector.x,
                m.saddle.y - opt.offset * unstable.vector.y};
        hat = follow_crossings(field, fam.integ(), z1, fam.sigma_hat_x(), 1, hatopt, false);
    }
    if (hat.crossings.empty()) throw NoCrossing("free separatrix missed the auxiliary circle");
    m.c_hat = wrap_unit(hat.crossings.front().point.y);
    return m;
}

}  // namespace cherry
