#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cherry/cells.hpp"

using namespace cherry;

namespace {

MapFamily std_boyd() {
    return MapFamily::boyd(make_beta_model(0.15, 0.85, 0.5, 0.5, 0.5), 0.0, 1.0);
}

Plateau plateau01(const MapFamily& fam) {
    auto p = plateau_for(fam, Rational(0, 1), {0.0, 1.0});
    REQUIRE(p.has_value());
    return *p;
}

}  // namespace

TEST_CASE("closed-form connection parameters inside the 0/1 plateau") {
    MapFamily fam = std_boyd();
    Plateau plat = plateau01(fam);
    // k = 1: solve 0.5 + theta = d(theta)
    auto t1 = connection_parameter(fam, plat, {0.7, 0.1, 0});
    REQUIRE(t1.has_value());
    CHECK(*t1 == doctest::Approx(2.0 / 11).epsilon(1e-12));
    auto t2 = connection_parameter(fam, plat, {0.6, 0.2, 1});
    REQUIRE(t2.has_value());
    CHECK(*t2 == doctest::Approx(1.0 / 12).epsilon(1e-12));
}

TEST_CASE("boundary roots are excluded") {
    MapFamily fam = std_boyd();
    Plateau plat = plateau01(fam);
    // d(0) = c_0 exactly: the crossing sits at the closed end, not interior
    CHECK(!connection_parameter(fam, plat, {0.5, 0.1, 0}).has_value());
}

TEST_CASE("cells outside the open flat arc are rejected") {
    MapFamily fam = std_boyd();
    Plateau plat = plateau01(fam);
    CHECK_THROWS_AS(connection_parameter(fam, plat, {0.9, 0.1, 0}), NotInsideFlatArc);
    // leaves (a, b) within the window even though it starts inside
    CHECK_THROWS_AS(connection_parameter(fam, plat, {0.16, 0.2, 0}), NotInsideFlatArc);
}

TEST_CASE("augmenting with no cells is the identity") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 4);
    std::size_t plats = d.plateaus.size();
    BifDiagram aug = augment_diagram(std::move(d), fam, {});
    CHECK(aug.connections.empty());
    CHECK(aug.plateaus.size() == plats);
    CHECK(germ_signature(aug) == 0);
}

TEST_CASE("two cells give two sorted points per unflagged plateau") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 4);
    std::vector<CherryCell> cells = {{0.7, 0.1, 0}, {0.6, 0.2, 1}};
    BifDiagram aug = augment_diagram(std::move(d), fam, cells);
    CHECK(germ_signature(aug) == 2);

    std::vector<double> in01;
    for (const auto& c : aug.connections)
        if (c.pq == Rational(0, 1)) in01.push_back(c.theta);
    // the 0/1 plateau is range-cropped, so it carries no points
    CHECK(in01.empty());

    std::vector<double> in12;
    for (const auto& c : aug.connections)
        if (c.pq == Rational(1, 2)) in12.push_back(c.theta);
    REQUIRE(in12.size() == 2);
    CHECK(in12[0] < in12[1]);

    // connection points are isolated: strictly inside the plateau interior
    for (const auto& c : aug.connections) {
        for (const auto& p : aug.plateaus) {
            if (p.pq == c.pq) {
                CHECK(c.theta > p.theta_lo);
                CHECK(c.theta < p.theta_hi);
            }
        }
    }
}

TEST_CASE("three ranged cells pierce every unflagged plateau with q <= 8") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 8);
    std::vector<CherryCell> cells = {{0.7, 0.1, 0}, {0.6, 0.2, 1}, {0.45, 0.05, 2}};
    BifDiagram aug = augment_diagram(std::move(d), fam, cells);
    CHECK(germ_signature(aug) == 3);
    for (const auto& p : aug.plateaus) {
        if (p.cropped()) continue;
        int count = 0;
        for (const auto& c : aug.connections)
            if (c.pq == p.pq) ++count;
        CHECK(count == 3);
    }
}

TEST_CASE("germ signatures compare by count only") {
    CHECK(germs_equivalent(2, 2));
    CHECK(!germs_equivalent(1, 2));
    CHECK(!germs_equivalent(std::nullopt, std::nullopt));
    CHECK(!germs_equivalent(std::nullopt, 2));
}

TEST_CASE("difference function is strictly increasing across the plateau") {
    MapFamily fam = std_boyd();
    auto plat = plateau_for(fam, Rational(1, 2), {0.0, 1.0});
    REQUIRE(plat.has_value());
    CherryCell cell{0.6, 0.2, 0};
    // sign sampling at 10 interior points: at most one sign change
    int changes = 0;
    double prev = 0;
    for (int i = 0; i < 10; ++i) {
        double theta = plat->theta_lo + (plat->theta_hi - plat->theta_lo) * (i + 0.5) / 10;
        FlatCircleMap m = fam.at(theta);
        double x = m.iterate_lift(m.critical(), plat->hit_index);
        double diff = x - (cell.d(theta) + (double)plat->pq.p);
        if (i && (diff < 0) != (prev < 0)) ++changes;
        if (i) CHECK(diff > prev);  // strictly increasing on the lift
        prev = diff;
    }
    CHECK(changes <= 1);
}

TEST_CASE("only the last intersection can connect") {
    MapFamily fam = std_boyd();
    auto plat = plateau_for(fam, Rational(1, 2), {0.0, 1.0});
    REQUIRE(plat.has_value());
    CherryCell cell{0.6, 0.2, 0};
    auto theta = connection_parameter(fam, *plat, cell);
    REQUIRE(theta.has_value());
    FlatCircleMap m = fam.at(*theta);
    // intermediate orbit points stay off the closed flat arc while d sits
    // strictly inside, so no spurious roots exist
    double z = m.critical();
    for (int j = 0; j < plat->hit_index; ++j) {
        CHECK(!m.in_flat_arc(z));
        z = m.eval_lift(z);
    }
    double u = z - std::floor(z - m.flat_a());
    CHECK(std::fabs(u - cell.d(*theta)) < 1e-9);
    CHECK(cell.d(*theta) > m.flat_a());
    CHECK(cell.d(*theta) < m.flat_b());
}
