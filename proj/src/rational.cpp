#include "cherry/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cherry {

Rational::Rational(long long num, long long den) : p(num), q(den) {
    if (q == 0) throw std::invalid_argument("rational with zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    long long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
}

namespace {

long long floor_div(long long a, long long b) {
    long long d = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? d - 1 : d;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

}  // namespace

std::vector<Rational> farey_enumerate(const Rational& lo, const Rational& hi, int max_den) {
    if (!(lo < hi)) throw std::invalid_argument("farey_enumerate: lo must be < hi");
    if (max_den < 1) throw std::invalid_argument("farey_enumerate: max_den must be >= 1");

    std::vector<Rational> out;
    for (long long q = 1; q <= max_den; ++q) {
        long long p_min = ceil_div(lo.p * q, lo.q);
        long long p_max = floor_div(hi.p * q, hi.q);
        for (long long p = p_min; p <= p_max; ++p) {
            if (std::gcd(p < 0 ? -p : p, q) == 1) out.push_back(Rational(p, q));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cherry
