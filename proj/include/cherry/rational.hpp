#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace cherry {

// Reduced fraction p/q with q > 0. Comparisons are exact in integer
// arithmetic; denominators stay far below the int64 overflow line here.
struct Rational {
    long long p = 0;
    long long q = 1;

    Rational() = default;
    Rational(long long num, long long den);

    double value() const { return double(p) / double(q); }
    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.p == b.p && a.q == b.q;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.p * b.q < b.p * a.q;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
};

inline Rational mediant(const Rational& a, const Rational& b) {
    return Rational(a.p + b.p, a.q + b.q);
}

// Width of a Farey interval, exact as a double for the denominators used here.
inline double farey_width(const Rational& lo, const Rational& hi) {
    return double(hi.p * lo.q - lo.p * hi.q) / (double(lo.q) * double(hi.q));
}

// All reduced p/q in [lo, hi] with q <= max_den, ascending.
std::vector<Rational> farey_enumerate(const Rational& lo, const Rational& hi, int max_den);

}  // namespace cherry
