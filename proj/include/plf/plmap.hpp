#pragma once

#include "plf/interval.hpp"
#include "plf/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace plf {

struct Point {
    Rational x, y;

    bool operator==(const Point&) const = default;
};

// Orientation-preserving piecewise-linear homeomorphism of [0,1].
// Invariant: points are sorted, start at (0,0), end at (1,1), strictly
// increasing in both coordinates, with no collinear interior vertex.
class PLMap {
public:
    PLMap() : pts_{{0, 0}, {1, 1}} {}

    static PLMap identity() { return PLMap(); }

    const std::vector<Point>& points() const { return pts_; }

    bool operator==(const PLMap&) const = default;

private:
    explicit PLMap(std::vector<Point> pts) : pts_(std::move(pts)) {}
    std::vector<Point> pts_;

    friend PLMap make_plmap(std::vector<Point> pts);
};

// Validates and normalizes a vertex list into a PLMap. Throws DomainError
// on anything that is not a strictly increasing path from (0,0) to (1,1).
PLMap make_plmap(std::vector<Point> pts);

Rational evaluate(const PLMap& f, const Rational& x);
Rational evaluate_inverse(const PLMap& f, const Rational& y);

// Composition in application order: x -> g(f(x)).
PLMap compose(const PLMap& f, const PLMap& g);

PLMap invert(const PLMap& f);

// Conjugate f^g = g^{-1} f g (word order), i.e. x -> g(f(g^{-1}(x))).
PLMap conjugate(const PLMap& f, const PLMap& g);

// Commutator [a,b] = a b a^{-1} b^{-1} in word order.
PLMap commutator(const PLMap& a, const PLMap& b);

PLMap power(const PLMap& f, long n);

// f on [iv.lo, iv.hi], identity elsewhere. Requires f to fix both endpoints.
PLMap restrict_to(const PLMap& f, const Interval& iv);

bool is_identity(const PLMap& f);
bool is_identity_on(const PLMap& f, const Interval& iv);

// Conjugation by x -> 1-x: the graph reflected through the anti-diagonal.
PLMap mirrored(const PLMap& f);

Interval mirrored(const Interval& iv);
Orbital mirrored(const Orbital& orb);

Rational initial_slope(const PLMap& f);
Rational final_slope(const PLMap& f);
std::pair<Rational, Rational> boundary_slopes(const PLMap& f);

// Slope of f immediately to the right / left of x.
Rational slope_right_at(const PLMap& f, const Rational& x);
Rational slope_left_at(const PLMap& f, const Rational& x);

// Least breakpoint not fixed by f; nullopt iff f is the identity.
std::optional<Rational> first_moved_point(const PLMap& f);

// Incremental assembly of a map from consecutive pieces. Pieces must be
// contiguous; finish() normalizes and validates the whole path.
class PLMapBuilder {
public:
    PLMapBuilder& append_point(const Point& p);
    PLMapBuilder& append_points(const std::vector<Point>& pts);
    // Diagonal segment ending at (x, x). Requires the current end (if any)
    // to sit on the diagonal.
    PLMapBuilder& append_identity(const Rational& x);
    // Graph of f over [iv.lo, iv.hi].
    PLMapBuilder& append_map(const PLMap& f, const Interval& iv);
    PLMap finish();

private:
    std::vector<Point> pts_;
};

enum class Anchor { FromLeft, FromRight };

// Furthest point p with f == g on the whole closed segment between p and
// anchor, walking away from anchor in the given direction. nullopt when the
// agreement has no positive length.
std::optional<Rational> agreement_bound(const PLMap& f, const PLMap& g,
                                        const Rational& anchor, Anchor dir);

// Coincidence set {x : f(x) = g(x)} inside a window, split into isolated
// points (strictly interior) and maximal agreement intervals (clipped to the
// closed window).
struct CoincidenceReport {
    Interval window;
    std::vector<Rational> isolated;
    std::vector<Interval> agreements;

    // Attained min/max of the coincidence set within the open window;
    // nullopt when empty or when the extremum is not attained because an
    // agreement interval reaches the window edge.
    std::optional<Rational> min_point() const;
    std::optional<Rational> max_point() const;
};

CoincidenceReport coincidence_points(const PLMap& f, const PLMap& g,
                                     const Interval& window);

} // namespace plf
