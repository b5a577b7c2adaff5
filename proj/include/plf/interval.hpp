#pragma once

#include "plf/rational.hpp"

#include <compare>
#include <string>

namespace plf {

// Open interval (lo, hi) with 0 <= lo < hi <= 1.
struct Interval {
    Rational lo, hi;

    bool operator==(const Interval&) const = default;

    bool contains(const Rational& x) const { return lo < x && x < hi; }

    // Closure of `inner` lies inside this open interval.
    bool strictly_contains(const Interval& inner) const {
        return lo < inner.lo && inner.hi < hi;
    }

    std::string str() const { return "(" + rat_str(lo) + ", " + rat_str(hi) + ")"; }
};

enum class Sign { Up, Down };

inline const char* sign_str(Sign s) { return s == Sign::Up ? "up" : "down"; }

// Maximal open interval of non-fixed points, signed by whether the map
// moves points up (f(x) > x) or down throughout.
struct Orbital {
    Interval span;
    Sign sign;

    bool operator==(const Orbital&) const = default;
};

} // namespace plf
