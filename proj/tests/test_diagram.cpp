#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cherry/circle.hpp"
#include "cherry/diagram.hpp"

using namespace cherry;

namespace {

MapFamily std_boyd() {
    return MapFamily::boyd(make_beta_model(0.15, 0.85, 0.5, 0.5, 0.5), 0.0, 1.0);
}

// Independent oracle for plateau edges: bisection on the first-hit index of
// the critical orbit.
int hit_index(const MapFamily& fam, double theta, long budget = 400) {
    auto orbit = critical_orbit(fam.at(theta), budget);
    return orbit.hit_index ? *orbit.hit_index : -1;
}

double hit_region_edge(const MapFamily& fam, int hit, double inside, double outside) {
    for (int i = 0; i < 48; ++i) {
        double mid = 0.5 * (inside + outside);
        (hit_index(fam, mid) == hit ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
}

}  // namespace

TEST_CASE("plateau 0/1 matches the closed form c + theta = b") {
    MapFamily fam = std_boyd();
    auto plat = plateau_for(fam, Rational(0, 1), {0.0, 1.0});
    REQUIRE(plat.has_value());
    CHECK(plat->theta_lo == 0.0);
    CHECK(plat->tag_lo == EndpointTag::RangeCropped);
    CHECK(plat->theta_hi == doctest::Approx(0.35).epsilon(1e-10));
    CHECK(plat->tag_hi == EndpointTag::LoopAtB);
    CHECK(plat->cert_hi <= 1e-10);
    CHECK(plat->hit_index == 0);
}

TEST_CASE("plateau 1/1 matches the closed form c + theta = a + 1") {
    MapFamily fam = std_boyd();
    auto plat = plateau_for(fam, Rational(1, 1), {0.0, 1.0});
    REQUIRE(plat.has_value());
    CHECK(plat->theta_lo == doctest::Approx(0.65).epsilon(1e-10));
    CHECK(plat->tag_lo == EndpointTag::LoopAtA);
    CHECK(plat->theta_hi == 1.0);
    CHECK(plat->tag_hi == EndpointTag::RangeCropped);
    CHECK(plat->cert_lo <= 1e-10);
}

TEST_CASE("rotation range excludes 3/1") {
    MapFamily fam = std_boyd();
    CHECK(!plateau_for(fam, Rational(3, 1), {0.0, 1.0}).has_value());
}

TEST_CASE("plateau 1/2 agrees with the hit-index bisection oracle") {
    MapFamily fam = std_boyd();
    auto plat = plateau_for(fam, Rational(1, 2), {0.0, 1.0});
    REQUIRE(plat.has_value());
    CHECK(plat->hit_index == 1);
    double left_oracle = hit_region_edge(fam, 1, 0.5, 0.36);
    double right_oracle = hit_region_edge(fam, 1, 0.5, 0.64);
    CHECK(plat->theta_lo == doctest::Approx(left_oracle).epsilon(1e-8));
    CHECK(plat->theta_hi == doctest::Approx(right_oracle).epsilon(1e-8));
    CHECK(plat->cert_lo <= 1e-10);
    CHECK(plat->cert_hi <= 1e-10);
    // For small q the backward loop condition can be cross-checked forward:
    // the last intersection lands on the flat-arc endpoint.
    FlatCircleMap at_lo = fam.at(plat->theta_lo);
    double z = at_lo.iterate_lift(at_lo.critical(), plat->hit_index);
    CHECK(circle_dist(wrap_unit(z), at_lo.flat_a()) < 1e-9);
}

TEST_CASE("scan at Q=1 yields two plateaus and one residual gap") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 1);
    REQUIRE(d.plateaus.size() == 2);
    CHECK(d.plateaus[0].pq == Rational(0, 1));
    CHECK(d.plateaus[1].pq == Rational(1, 1));
    REQUIRE(d.residual.intervals.size() == 1);
    CHECK(d.residual.intervals[0].lo == doctest::Approx(0.35).epsilon(1e-10));
    CHECK(d.residual.intervals[0].hi == doctest::Approx(0.65).epsilon(1e-10));
    CHECK(residual_measure(d) == doctest::Approx(0.3).epsilon(1e-9));
    REQUIRE(d.loops.size() == 2);
    CHECK(d.loops[0] == doctest::Approx(0.35));
    CHECK(d.loops[1] == doctest::Approx(0.65));
}

TEST_CASE("scan at Q=2 splits the residual around the 1/2 plateau") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 2);
    REQUIRE(d.plateaus.size() == 3);
    CHECK(d.residual.intervals.size() == 2);
    BifDiagram d1 = scan_diagram(fam, {0.0, 1.0}, 1);
    CHECK(residual_measure(d) < residual_measure(d1));
}

TEST_CASE("residual measure strictly decreases as Q doubles") {
    MapFamily fam = std_boyd();
    double prev = 1e300;
    for (int q : {4, 8, 16, 32, 64}) {
        BifDiagram d = scan_diagram(fam, {0.0, 1.0}, q);
        double m = residual_measure(d);
        CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("diagrams nest: Q plateaus persist at 2Q, residual shrinks") {
    MapFamily fam = std_boyd();
    BifDiagram d8 = scan_diagram(fam, {0.0, 1.0}, 8);
    BifDiagram d16 = scan_diagram(fam, {0.0, 1.0}, 16);
    for (const auto& p : d8.plateaus) {
        bool found = false;
        for (const auto& q : d16.plateaus) {
            if (q.pq == p.pq) {
                found = true;
                CHECK(std::fabs(q.theta_lo - p.theta_lo) < 1e-10);
                CHECK(std::fabs(q.theta_hi - p.theta_hi) < 1e-10);
            }
        }
        CHECK(found);
    }
    for (const auto& iv : d16.residual.intervals) {
        bool inside = false;
        for (const auto& jv : d8.residual.intervals)
            if (iv.lo >= jv.lo - 1e-10 && iv.hi <= jv.hi + 1e-10) inside = true;
        CHECK(inside);
    }
}

TEST_CASE("plateau order matches rational order and endpoints certify") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 16);
    for (std::size_t i = 1; i < d.plateaus.size(); ++i) {
        CHECK(d.plateaus[i - 1].pq < d.plateaus[i].pq);
        CHECK(d.plateaus[i - 1].theta_hi <= d.plateaus[i].theta_lo + 1e-12);
    }
    for (const auto& p : d.plateaus) {
        if (p.tag_lo != EndpointTag::RangeCropped) CHECK(p.cert_lo <= 1e-10);
        if (p.tag_hi != EndpointTag::RangeCropped) CHECK(p.cert_hi <= 1e-10);
    }
}

TEST_CASE("every loop parameter is a residual gap boundary") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 16);
    CHECK(!d.loops.empty());
    for (double t : d.loops) {
        bool boundary = false;
        for (const auto& iv : d.residual.intervals)
            if (std::fabs(iv.lo - t) < 1e-12 || std::fabs(iv.hi - t) < 1e-12) boundary = true;
        CHECK(boundary);
    }
}

TEST_CASE("a decreasing family is rejected as NotMonotone") {
    FlatCircleMap base = make_beta_model(0.15, 0.85, 0.5, 0.5, 0.5);
    auto bad = MapFamily::custom(
        "decreasing",
        [base](double theta) {
            double c_tot = base.critical_lift() - theta;
            double c_raw = c_tot - std::floor(c_tot);
            return make_beta_model(0.15, 0.85, c_raw, 0.5, 0.5, (int)std::floor(c_tot));
        },
        0.0, 1.0, 1.0);
    CHECK_THROWS_AS(plateau_for(bad, Rational(0, 1), {0.0, 1.0}), NotMonotone);
}

TEST_CASE("backward lift inverts forward iteration on the bridge") {
    MapFamily fam = std_boyd();
    FlatCircleMap m = fam.at(0.47);
    for (double z : {1.3, 1.72, 2.05}) {
        for (int steps : {1, 2, 5}) {
            double back = backward_lift(m, z, steps);
            CHECK(m.iterate_lift(back, steps) == doctest::Approx(z).epsilon(1e-11));
        }
    }
}

TEST_CASE("staircase samples are nondecreasing") {
    MapFamily fam = std_boyd();
    auto samples = staircase(fam, {0.0, 1.0}, 101, 20000, 1e-6);
    REQUIRE(samples.size() == 101);
    for (std::size_t i = 1; i < samples.size(); ++i)
        CHECK(samples[i].rho >= samples[i - 1].rho - 1e-6);
}

TEST_CASE("box dimension estimate runs on the residual ladder") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 32);
    auto ladder = default_residual_ladder(d, 10);
    DimensionFit fit = box_dimension_estimate(d, ladder);
    CHECK(fit.slope >= 0.0);
    CHECK(fit.slope < 1.0);
    std::vector<double> bad = {1e-3, d.residual.resolution() * 0.01};
    CHECK_THROWS_AS(box_dimension_estimate(d, bad), ScaleRangeInvalid);
}

TEST_CASE("parallel scan matches the serial scan") {
    MapFamily fam = std_boyd();
    ScanOptions serial, parallel;
    parallel.jobs = 4;
    BifDiagram a = scan_diagram(fam, {0.0, 1.0}, 12, serial);
    BifDiagram b = scan_diagram(fam, {0.0, 1.0}, 12, parallel);
    REQUIRE(a.plateaus.size() == b.plateaus.size());
    for (std::size_t i = 0; i < a.plateaus.size(); ++i) {
        CHECK(a.plateaus[i].pq == b.plateaus[i].pq);
        CHECK(a.plateaus[i].theta_lo == b.plateaus[i].theta_lo);
        CHECK(a.plateaus[i].theta_hi == b.plateaus[i].theta_hi);
    }
}
