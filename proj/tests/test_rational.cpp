#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <vector>

#include "cherry/rational.hpp"

using namespace cherry;

TEST_CASE("farey [0,1] Q=2") {
    auto f = farey_enumerate(Rational(0, 1), Rational(1, 1), 2);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == Rational(0, 1));
    CHECK(f[1] == Rational(1, 2));
    CHECK(f[2] == Rational(1, 1));
}

TEST_CASE("F5 has 11 fractions") {
    auto f = farey_enumerate(Rational(0, 1), Rational(1, 1), 5);
    CHECK(f.size() == 11);
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i - 1] < f[i]);
}

TEST_CASE("F100 count matches the totient-sum oracle") {
    // |F_Q on [0,1]| = 1 + sum_{q<=Q} phi(q), phi via sieve
    const int q_max = 100;
    std::vector<int> phi(q_max + 1);
    std::iota(phi.begin(), phi.end(), 0);
    for (int p = 2; p <= q_max; ++p) {
        if (phi[p] == p) {  // prime
            for (int k = p; k <= q_max; k += p) phi[k] -= phi[k] / p;
        }
    }
    long expected = 1;
    for (int q = 1; q <= q_max; ++q) expected += phi[q];
    CHECK(expected == 3045);
    auto f = farey_enumerate(Rational(0, 1), Rational(1, 1), q_max);
    CHECK((long)f.size() == expected);
}

TEST_CASE("enumeration respects sub-unit ranges and negative values") {
    auto f = farey_enumerate(Rational(-1, 2), Rational(1, 3), 3);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f[i] >= Rational(-1, 2));
        CHECK(f[i] <= Rational(1, 3));
        CHECK(f[i].q <= 3);
        if (i) CHECK(f[i - 1] < f[i]);
    }
    CHECK(f[0] == Rational(-1, 2));
    CHECK(f.back() == Rational(1, 3));
}

TEST_CASE("reduction and mediant") {
    CHECK(Rational(4, 8) == Rational(1, 2));
    CHECK(Rational(-4, 8) == Rational(-1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(mediant(Rational(0, 1), Rational(1, 1)) == Rational(1, 2));
    CHECK(farey_width(Rational(1, 3), Rational(1, 2)) == doctest::Approx(1.0 / 6));
}
