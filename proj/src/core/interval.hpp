#pragma once

#include <algorithm>
#include <string>

#include "errors.hpp"

namespace nikmop {

// Closed interval [a,b] with a < b. Endpoints are configuration data and stay
// double; templated code widens as needed.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!(a < b)) throw ValidationError("interval endpoints must satisfy a < b");
    }

    double mid() const { return 0.5 * (a + b); }
    double half() const { return 0.5 * (b - a); }
    double length() const { return b - a; }

    bool contains(double x) const { return x >= a && x <= b; }
    double dist(double x) const { return x < a ? a - x : (x > b ? x - b : 0.0); }

    bool overlaps(const Interval& o) const { return a <= o.b && o.a <= b; }

    bool operator==(const Interval& o) const { return a == o.a && b == o.b; }
};

inline double dist_to_interval(const Interval& iv, double re, double im) {
    double dx = iv.dist(re);
    return std::sqrt(dx * dx + im * im);
}

} // namespace nikmop
