#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "cherry/flat_map.hpp"

using namespace cherry;

namespace {

FlatCircleMap std_map() { return make_beta_model(0.15, 0.85, 0.5, 0.5, 0.5); }

// Independent oracle: minimize the sampled bridge derivative directly.
double sampled_min_slope(const FlatCircleMap& m, int n = 20000) {
    double lo = m.flat_b(), hi = m.flat_a() + 1.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < n; ++i) {
        double y = lo + (hi - lo) * i / n;
        best = std::min(best, m.derivative(y));
    }
    return best;
}

}  // namespace

TEST_CASE("std map gamma matches the analytic corner-density minimum") {
    FlatCircleMap m = std_map();
    // (2/pi) / 0.3 for the symmetric half-exponent density on a 0.3 bridge
    CHECK(m.gamma() == doctest::Approx(2.1220659078919378).epsilon(1e-14));
    CHECK(sampled_min_slope(m) == doctest::Approx(m.gamma()).epsilon(1e-7));
}

TEST_CASE("too-short flat arc violates expansivity") {
    // bridge length 0.9, min slope (2/pi)/0.9 < 1
    CHECK_THROWS_AS(make_beta_model(0.45, 0.55, 0.5, 0.5, 0.5), ExpansivityViolated);
}

TEST_CASE("gamma is the sampled minimum for asymmetric exponents too") {
    FlatCircleMap m = make_beta_model(0.1, 0.9, 0.3, 0.35, 0.7);
    CHECK(sampled_min_slope(m) == doctest::Approx(m.gamma()).epsilon(1e-6));
    CHECK(m.gamma() > 1.0);
}

TEST_CASE("degree one holds to the last rounding of the lift sum") {
    FlatCircleMap m = std_map();
    std::mt19937 rng(42);
    // dyadic inputs so y + 1 is itself representable; the bridge value is
    // identical for y and y + 1 and only the final integer add can round
    std::uniform_int_distribution<int> grid(-3 << 20, 3 << 20);
    for (int i = 0; i < 100; ++i) {
        double y = grid(rng) * 0x1p-20;
        CHECK(std::fabs(m.eval_lift(y + 1.0) - m.eval_lift(y) - 1.0) <= 1e-15);
    }
    // exact on the flat arc where no bridge term enters
    for (int k = -2; k <= 2; ++k) CHECK(m.eval_lift(0.5 + k + 1.0) - m.eval_lift(0.5 + k) == 1.0);
}

TEST_CASE("eval_lift on flat-arc translates is exact") {
    FlatCircleMap m = std_map();
    CHECK(m.eval_lift(0.5) == 0.5);
    CHECK(m.eval_lift(0.85) == 0.5);
    CHECK(m.eval_lift(1.15) == 1.5);
    CHECK(m.eval_lift(0.15) == 0.5);
    CHECK(m.eval_lift(2.2) == 2.5);
}

TEST_CASE("iterate_lift composes eval_lift") {
    FlatCircleMap m = std_map();
    CHECK(m.iterate_lift(0.5, 5) == 0.5);
    CHECK(m.iterate_lift(0.73, 0) == 0.73);
    double two_step = m.eval_lift(m.eval_lift(0.9));
    CHECK(m.iterate_lift(0.9, 2) == two_step);
}

TEST_CASE("derivative: flat interior, bridge value, corner blow-up") {
    FlatCircleMap m = std_map();
    CHECK(m.derivative(0.5) == 0.0);
    CHECK(m.derivative(1.0) == doctest::Approx(2.1220659078919378).epsilon(1e-12));
    CHECK(m.derivative(0.85 + 1e-12) > 1e4);
    CHECK(std::isinf(m.derivative(0.85 + 1e-15)));
    CHECK_THROWS_AS(m.derivative(0.85), UndefinedAtCorner);
    CHECK_THROWS_AS(m.derivative(0.15), UndefinedAtCorner);
}

TEST_CASE("lift is monotone on random pairs") {
    FlatCircleMap m = make_beta_model(0.2, 0.7, 0.9, 0.6, 0.4);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int i = 0; i < 300; ++i) {
        double y1 = unif(rng), y2 = unif(rng);
        if (y1 > y2) std::swap(y1, y2);
        CHECK(m.eval_lift(y2) >= m.eval_lift(y1));
    }
}

TEST_CASE("sampled bridge slopes never drop below the stored gamma") {
    FlatCircleMap m = std_map();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        double y = m.flat_b() + (m.flat_a() + 1.0 - m.flat_b()) * unif(rng);
        if (y == m.flat_b()) continue;
        CHECK(m.derivative(y) >= m.gamma() - 1e-9);
    }
}

TEST_CASE("half-exponent fast path agrees with the incomplete beta") {
    FlatCircleMap m = std_map();
    for (int i = 1; i < 500; ++i) {
        double s = i / 500.0;
        CHECK(m.bridge_cdf(s) ==
              doctest::Approx(boost::math::ibeta(0.5, 0.5, s)).epsilon(1e-13));
        double u = i / 500.0;
        CHECK(m.bridge_quantile(u) ==
              doctest::Approx(boost::math::ibeta_inv(0.5, 0.5, u)).epsilon(1e-12));
    }
}

TEST_CASE("bridge inverse is the lift inverse at the pinned ends") {
    FlatCircleMap m = std_map();
    CHECK(m.bridge_inverse(0.5) == 0.85);
    CHECK(m.bridge_inverse(1.5) == 1.15);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        double z = 0.5 + unif(rng);
        double y = m.bridge_inverse(z);
        CHECK(m.eval_lift(y) == doctest::Approx(z).epsilon(1e-12));
    }
}

TEST_CASE("construction validates arcs and exponents") {
    CHECK_THROWS_AS(make_beta_model(0.9, 0.2, 0.5, 0.5, 0.5), Error);
    CHECK_THROWS_AS(make_beta_model(0.1, 0.9, 1.5, 0.5, 0.5), Error);
    CHECK_THROWS_AS(make_beta_model(0.1, 0.9, 0.5, 1.2, 0.5), Error);
}
