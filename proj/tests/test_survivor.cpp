#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cherry/map_family.hpp"
#include "cherry/rotation.hpp"
#include "cherry/survivor.hpp"

using namespace cherry;

namespace {

FlatCircleMap std_map() { return make_beta_model(0.15, 0.85, 0.5, 0.5, 0.5); }

bool in_open_flat(const FlatCircleMap& m, double y) {
    double u = y - std::floor(y - m.flat_a());
    return u > m.flat_a() && u < m.flat_b();
}

}  // namespace

TEST_CASE("inverse branch pins the bridge ends") {
    FlatCircleMap m = std_map();
    CHECK(inverse_branch(m, 0.5) == m.flat_b());
    CHECK(inverse_branch(m, 1.5) == m.flat_a() + 1.0);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        double z = 0.5 + unif(rng);
        double y = inverse_branch(m, z);
        CHECK(y >= m.flat_b());
        CHECK(y <= m.flat_a() + 1.0);
        CHECK(m.eval_lift(y) == doctest::Approx(z).epsilon(1e-12));
    }
}

TEST_CASE("depth 0 cover is the closed bridge") {
    IntervalCover e0 = survivor_cover(std_map(), 0);
    REQUIRE(e0.intervals.size() == 1);
    CHECK(e0.measure() == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("depth 1 cover obeys the contraction bound") {
    FlatCircleMap m = std_map();
    IntervalCover e1 = survivor_cover(m, 1);
    CHECK(e1.intervals.size() <= 2);
    CHECK(e1.measure() <= 0.3 / m.gamma() + 1e-9);  // 0.3 / 2.1221 = 0.14137
    CHECK(e1.measure() <= 0.1413716694115407 + 1e-9);
}

TEST_CASE("per-level contraction and nesting hold through depth 10") {
    FlatCircleMap m = std_map();
    IntervalCover prev = survivor_cover(m, 0);
    for (int n = 1; n <= 10; ++n) {
        IntervalCover cur = survivor_cover(m, n);
        CHECK(cur.measure() <= prev.measure() / m.gamma() + 1e-12);
        CHECK(cur.measure() <= 0.3 * std::pow(m.gamma(), -n) + 1e-12);
        for (const auto& iv : cur.intervals) {
            bool inside = false;
            for (const auto& jv : prev.intervals)
                if (iv.lo >= jv.lo - 1e-12 && iv.hi <= jv.hi + 1e-12) inside = true;
            CHECK(inside);
        }
        prev = cur;
    }
}

TEST_CASE("cover splits at the wrap over c for shifted maps") {
    MapFamily fam = MapFamily::boyd(std_map(), 0.0, 1.0);
    FlatCircleMap m = fam.at(0.5);  // critical value on the bridge
    IntervalCover deep = survivor_cover(m, 6);
    CHECK(deep.intervals.size() >= 2);
    CHECK(deep.measure() <= 0.3 * std::pow(m.gamma(), -6) + 1e-12);
}

TEST_CASE("dynamic membership: covered points survive, complement dies") {
    FlatCircleMap m = std_map();
    const int depth = 8;
    IntervalCover cover = survivor_cover(m, depth);
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (int i = 0; i < 1000; ++i) {
        const auto& iv = cover.intervals[rng() % cover.intervals.size()];
        double y = iv.lo + unif(rng) * iv.length();
        double z = y;
        bool entered = false;
        for (int k = 0; k < depth; ++k) {
            double u = z - std::floor(z - m.flat_a());
            if (u > m.flat_a() + 1e-11 && u < m.flat_b() - 1e-11) entered = true;
            z = m.eval_lift(z);
        }
        CHECK(!entered);
    }

    // complement within the bridge: gaps between cover intervals
    int tested = 0;
    for (int i = 0; i < 4000 && tested < 1000; ++i) {
        double y = m.flat_b() + unif(rng) * (m.flat_a() + 1.0 - m.flat_b());
        bool covered = false;
        for (const auto& iv : cover.intervals)
            if (y >= iv.lo - 1e-13 && y <= iv.hi + 1e-13) covered = true;
        if (covered) continue;
        ++tested;
        double z = y;
        bool entered = false;
        for (int k = 0; k <= depth && !entered; ++k) {
            if (in_open_flat(m, z)) entered = true;
            z = m.eval_lift(z);
        }
        CHECK(entered);
    }
    CHECK(tested > 200);
}

TEST_CASE("box-dimension estimates trend down with depth") {
    FlatCircleMap m = std_map();
    double prev_slope = 1e300;
    for (int depth : {2, 5, 8}) {
        IntervalCover c = survivor_cover(m, depth);
        double hi = 0.0;
        for (const auto& iv : c.intervals) hi = std::max(hi, iv.length());
        double lo = c.resolution();
        if (!(hi > lo)) continue;
        auto fit = box_dimension_fit(c, geometric_ladder(hi, lo, 8));
        CHECK(fit.slope <= prev_slope + 0.05);
        prev_slope = fit.slope;
    }
    CHECK(prev_slope < 0.6);
}

TEST_CASE("interval cap flags runaway pullbacks") {
    SurvivorOptions opt;
    opt.interval_cap = 1;
    MapFamily fam = MapFamily::boyd(std_map(), 0.0, 1.0);
    CHECK_THROWS_AS(survivor_cover(fam.at(0.5), 8, opt), DepthOverflow);
}

TEST_CASE("rational trace degenerates with a flag, not an error") {
    // The spec leaves the rational case open; the cover is reported and the
    // rationality is visible through classify.
    FlatCircleMap m = std_map();
    IntervalCover deep = survivor_cover(m, 12);
    CHECK(deep.measure() < 1e-3);
    CHECK(rotation_number(m).is_rational());
}
