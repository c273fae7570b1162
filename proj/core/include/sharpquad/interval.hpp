#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sharpquad {

/// Closed interval [a,b] with a < b, both finite.
struct Interval {
    double a;
    double b;

    Interval(double a_, double b_) : a(a_), b(b_) {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw std::domain_error("Interval: endpoints must be finite");
        if (!(a < b))
            throw std::domain_error("Interval: require a < b, got [" +
                                    std::to_string(a_) + ", " + std::to_string(b_) + "]");
    }

    double length() const { return b - a; }
    double midpoint() const { return 0.5 * (a + b); }
    bool contains(double t) const { return t >= a && t <= b; }

    friend bool operator==(const Interval& u, const Interval& v) {
        return u.a == v.a && u.b == v.b;
    }
};

} // namespace sharpquad
