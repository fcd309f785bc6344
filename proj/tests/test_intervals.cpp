#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cherry/errors.hpp"
#include "cherry/intervals.hpp"

using namespace cherry;

namespace {

// Exact middle-thirds cover at the given depth.
IntervalCover middle_thirds(int depth) {
    IntervalCover c;
    c.intervals = {{0.0, 1.0}};
    for (int d = 0; d < depth; ++d) {
        std::vector<Interval> next;
        for (const auto& iv : c.intervals) {
            double third = iv.length() / 3.0;
            next.push_back({iv.lo, iv.lo + third});
            next.push_back({iv.hi - third, iv.hi});
        }
        c.intervals = std::move(next);
    }
    c.depth = depth;
    return c;
}

}  // namespace

TEST_CASE("middle-thirds box counts are exactly 2^j at scale 3^-j") {
    IntervalCover c = middle_thirds(8);
    CHECK(c.measure() == doctest::Approx(std::pow(2.0 / 3.0, 8)).epsilon(1e-12));
    for (int j = 1; j <= 8; ++j) {
        long long n = box_count(c, std::pow(3.0, -j));
        CHECK(n == (1LL << j));
    }
}

TEST_CASE("middle-thirds slope reproduces log2/log3") {
    IntervalCover c = middle_thirds(8);
    std::vector<double> ladder;
    for (int j = 1; j <= 8; ++j) ladder.push_back(std::pow(3.0, -j));
    DimensionFit fit = box_dimension_fit(c, ladder);
    CHECK(fit.slope == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.02 / 0.63));
    CHECK(std::fabs(fit.slope - 0.6309297535714574) < 0.02);
    CHECK(fit.r2 > 0.999);
}

TEST_CASE("single point cover has slope 0") {
    IntervalCover c;
    c.intervals = {{0.4, 0.4}};
    std::vector<double> ladder = {0.1, 0.05, 0.025, 0.0125};
    DimensionFit fit = box_dimension_fit(c, ladder);
    CHECK(fit.slope == doctest::Approx(0.0));
}

TEST_CASE("ladder below the cover resolution is rejected") {
    IntervalCover c = middle_thirds(4);
    std::vector<double> ladder = {0.1, std::pow(3.0, -8)};
    CHECK_THROWS_AS(box_dimension_fit(c, ladder), ScaleRangeInvalid);
}

TEST_CASE("box counts do not increase with the scale") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        IntervalCover c;
        double x = 0.0;
        for (int i = 0; i < 30; ++i) {
            double lo = x + 0.01 * unif(rng);
            double hi = lo + 0.02 * unif(rng);
            c.intervals.push_back({lo, hi});
            x = hi;
        }
        long long prev = -1;
        for (double eps : {0.001, 0.004, 0.016, 0.064, 0.256}) {
            long long n = box_count(c, eps);
            if (prev >= 0) CHECK(n <= prev);
            prev = n;
        }
    }
}

TEST_CASE("sort_and_merge produces a disjoint ascending cover") {
    IntervalCover c;
    c.intervals = {{0.5, 0.7}, {0.1, 0.3}, {0.25, 0.55}};
    c.sort_and_merge();
    REQUIRE(c.intervals.size() == 1);
    CHECK(c.intervals[0].lo == doctest::Approx(0.1));
    CHECK(c.intervals[0].hi == doctest::Approx(0.7));
}
