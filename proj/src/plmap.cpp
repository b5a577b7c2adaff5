#include "plf/plmap.hpp"

#include <algorithm>

namespace plf {

namespace {

Rational seg_slope(const Point& a, const Point& b) {
    return Rational(b.y - a.y) / Rational(b.x - a.x);
}

// Index of the segment [pts[i], pts[i+1]] containing x.
size_t find_segment(const std::vector<Point>& pts, const Rational& x) {
    size_t lo = 0, hi = pts.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (pts[mid].x <= x) lo = mid; else hi = mid;
    }
    return lo;
}

Rational eval_on(const std::vector<Point>& pts, const Rational& x) {
    const size_t i = find_segment(pts, x);
    const Point &a = pts[i], &b = pts[i + 1];
    if (x == a.x) return a.y;
    if (x == b.x) return b.y;
    return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
}

// Merged sorted breakpoint x-coordinates of f and g clipped to [lo, hi],
// with lo and hi always included.
std::vector<Rational> merged_knots(const PLMap& f, const PLMap& g,
                                   const Rational& lo, const Rational& hi) {
    std::vector<Rational> xs;
    xs.push_back(lo);
    for (const auto& p : f.points())
        if (p.x > lo && p.x < hi) xs.push_back(p.x);
    for (const auto& p : g.points())
        if (p.x > lo && p.x < hi) xs.push_back(p.x);
    xs.push_back(hi);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

} // namespace

PLMap make_plmap(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.x < b.x; });
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const auto& p : pts) {
        if (!out.empty() && p.x == out.back().x) {
            if (p.y != out.back().y)
                throw DomainError("two values at x=" + rat_str(p.x));
            continue;
        }
        out.push_back(p);
    }
    if (out.size() < 2 || out.front() != Point{0, 0} || out.back() != Point{1, 1})
        throw DomainError("map must run from (0,0) to (1,1)");
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i].y <= out[i - 1].y)
            throw DomainError("values must be strictly increasing at x=" +
                              rat_str(out[i].x));
    std::vector<Point> norm;
    norm.reserve(out.size());
    norm.push_back(out.front());
    for (size_t i = 1; i + 1 < out.size(); ++i) {
        if (seg_slope(norm.back(), out[i]) == seg_slope(out[i], out[i + 1]))
            continue;
        norm.push_back(out[i]);
    }
    norm.push_back(out.back());
    return PLMap(std::move(norm));
}

Rational evaluate(const PLMap& f, const Rational& x) {
    if (x < 0 || x > 1) throw DomainError("argument outside [0,1]: " + rat_str(x));
    return eval_on(f.points(), x);
}

Rational evaluate_inverse(const PLMap& f, const Rational& y) {
    if (y < 0 || y > 1) throw DomainError("value outside [0,1]: " + rat_str(y));
    const auto& pts = f.points();
    size_t lo = 0, hi = pts.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (pts[mid].y <= y) lo = mid; else hi = mid;
    }
    const Point &a = pts[lo], &b = pts[lo + 1];
    if (y == a.y) return a.x;
    if (y == b.y) return b.x;
    return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
}

PLMap compose(const PLMap& f, const PLMap& g) {
    std::vector<Rational> xs;
    for (const auto& p : f.points()) xs.push_back(p.x);
    for (const auto& p : g.points()) xs.push_back(evaluate_inverse(f, p.x));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Point> pts;
    pts.reserve(xs.size());
    for (const auto& x : xs) pts.push_back({x, evaluate(g, evaluate(f, x))});
    return make_plmap(std::move(pts));
}

PLMap invert(const PLMap& f) {
    std::vector<Point> pts;
    pts.reserve(f.points().size());
    for (const auto& p : f.points()) pts.push_back({p.y, p.x});
    return make_plmap(std::move(pts));
}

PLMap conjugate(const PLMap& f, const PLMap& g) {
    return compose(compose(invert(g), f), g);
}

PLMap commutator(const PLMap& a, const PLMap& b) {
    return compose(compose(compose(a, b), invert(a)), invert(b));
}

PLMap power(const PLMap& f, long n) {
    if (n == 0) return PLMap::identity();
    PLMap base = n < 0 ? invert(f) : f;
    unsigned long e = n < 0 ? 0UL - static_cast<unsigned long>(n)
                            : static_cast<unsigned long>(n);
    PLMap acc = PLMap::identity();
    while (e > 0) {
        if (e & 1) acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

PLMap restrict_to(const PLMap& f, const Interval& iv) {
    if (evaluate(f, iv.lo) != iv.lo || evaluate(f, iv.hi) != iv.hi)
        throw DomainError("restriction interval " + iv.str() +
                          " is not fixed by the map");
    std::vector<Point> pts;
    pts.push_back({0, 0});
    pts.push_back({iv.lo, iv.lo});
    for (const auto& p : f.points())
        if (p.x > iv.lo && p.x < iv.hi) pts.push_back(p);
    pts.push_back({iv.hi, iv.hi});
    pts.push_back({1, 1});
    return make_plmap(std::move(pts));
}

bool is_identity(const PLMap& f) { return f.points().size() == 2; }

bool is_identity_on(const PLMap& f, const Interval& iv) {
    if (evaluate(f, iv.lo) != iv.lo || evaluate(f, iv.hi) != iv.hi) return false;
    for (const auto& p : f.points())
        if (p.x > iv.lo && p.x < iv.hi && p.y != p.x) return false;
    return true;
}

PLMap mirrored(const PLMap& f) {
    std::vector<Point> pts;
    pts.reserve(f.points().size());
    for (auto it = f.points().rbegin(); it != f.points().rend(); ++it)
        pts.push_back({1 - it->x, 1 - it->y});
    return make_plmap(std::move(pts));
}

Interval mirrored(const Interval& iv) { return {1 - iv.hi, 1 - iv.lo}; }

Orbital mirrored(const Orbital& orb) {
    return {mirrored(orb.span), orb.sign == Sign::Up ? Sign::Down : Sign::Up};
}

Rational initial_slope(const PLMap& f) {
    return seg_slope(f.points()[0], f.points()[1]);
}

Rational final_slope(const PLMap& f) {
    const auto& pts = f.points();
    return seg_slope(pts[pts.size() - 2], pts[pts.size() - 1]);
}

std::pair<Rational, Rational> boundary_slopes(const PLMap& f) {
    return {initial_slope(f), final_slope(f)};
}

Rational slope_right_at(const PLMap& f, const Rational& x) {
    if (x < 0 || x >= 1) throw DomainError("no right slope at " + rat_str(x));
    const auto& pts = f.points();
    size_t i = find_segment(pts, x);
    if (x == pts[i + 1].x) ++i;
    return seg_slope(pts[i], pts[i + 1]);
}

Rational slope_left_at(const PLMap& f, const Rational& x) {
    if (x <= 0 || x > 1) throw DomainError("no left slope at " + rat_str(x));
    const auto& pts = f.points();
    size_t i = find_segment(pts, x);
    // A breakpoint belongs to the segment on its right; step back for the
    // left-hand slope.
    if (x == pts[i].x && i > 0) --i;
    return seg_slope(pts[i], pts[i + 1]);
}

std::optional<Rational> first_moved_point(const PLMap& f) {
    for (const auto& p : f.points())
        if (p.y != p.x) return p.x;
    return std::nullopt;
}

PLMapBuilder& PLMapBuilder::append_point(const Point& p) {
    if (!pts_.empty()) {
        const Point& last = pts_.back();
        if (p.x == last.x) {
            if (p.y != last.y)
                throw DomainError("discontinuity at x=" + rat_str(p.x));
            return *this;
        }
        if (p.x < last.x || p.y <= last.y)
            throw DomainError("non-monotone piece at x=" + rat_str(p.x));
    }
    pts_.push_back(p);
    return *this;
}

PLMapBuilder& PLMapBuilder::append_points(const std::vector<Point>& pts) {
    for (const auto& p : pts) append_point(p);
    return *this;
}

PLMapBuilder& PLMapBuilder::append_identity(const Rational& x) {
    if (pts_.empty() && x > 0) append_point({0, 0});
    if (!pts_.empty() && pts_.back().x != pts_.back().y)
        throw DomainError("identity piece must start on the diagonal");
    if (pts_.empty() || x > pts_.back().x) append_point({x, x});
    return *this;
}

PLMapBuilder& PLMapBuilder::append_map(const PLMap& f, const Interval& iv) {
    append_point({iv.lo, evaluate(f, iv.lo)});
    for (const auto& p : f.points())
        if (p.x > iv.lo && p.x < iv.hi) append_point(p);
    append_point({iv.hi, evaluate(f, iv.hi)});
    return *this;
}

PLMap PLMapBuilder::finish() { return make_plmap(std::move(pts_)); }

std::optional<Rational> agreement_bound(const PLMap& f, const PLMap& g,
                                        const Rational& anchor, Anchor dir) {
    if (evaluate(f, anchor) != evaluate(g, anchor)) return std::nullopt;
    const Rational lo = dir == Anchor::FromRight ? Rational(0) : anchor;
    const Rational hi = dir == Anchor::FromRight ? anchor : Rational(1);
    if (lo == hi) return std::nullopt;
    const auto xs = merged_knots(f, g, lo, hi);
    Rational bound = anchor;
    if (dir == Anchor::FromRight) {
        for (size_t i = xs.size() - 1; i-- > 0;) {
            if (evaluate(f, xs[i]) != evaluate(g, xs[i])) break;
            bound = xs[i];
        }
    } else {
        for (size_t i = 1; i < xs.size(); ++i) {
            if (evaluate(f, xs[i]) != evaluate(g, xs[i])) break;
            bound = xs[i];
        }
    }
    if (bound == anchor) return std::nullopt;
    return bound;
}

std::optional<Rational> CoincidenceReport::min_point() const {
    std::optional<Rational> best;
    auto consider = [&](const Rational& x) {
        if (!best || x < *best) best = x;
    };
    for (const auto& x : isolated) consider(x);
    for (const auto& iv : agreements) {
        if (iv.lo == window.lo) return std::nullopt;
        consider(iv.lo);
    }
    return best;
}

std::optional<Rational> CoincidenceReport::max_point() const {
    std::optional<Rational> best;
    auto consider = [&](const Rational& x) {
        if (!best || x > *best) best = x;
    };
    for (const auto& x : isolated) consider(x);
    for (const auto& iv : agreements) {
        if (iv.hi == window.hi) return std::nullopt;
        consider(iv.hi);
    }
    return best;
}

CoincidenceReport coincidence_points(const PLMap& f, const PLMap& g,
                                     const Interval& window) {
    const auto xs = merged_knots(f, g, window.lo, window.hi);
    // Closed sub-pieces of the coincidence set, in order; lo == hi marks a
    // single point. Touching pieces are merged as they are emitted.
    std::vector<std::pair<Rational, Rational>> pieces;
    auto emit = [&](const Rational& lo, const Rational& hi) {
        if (!pieces.empty() && pieces.back().second == lo)
            pieces.back().second = hi;
        else
            pieces.emplace_back(lo, hi);
    };
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational &u = xs[i], &v = xs[i + 1];
        const Rational du = evaluate(f, u) - evaluate(g, u);
        const Rational dv = evaluate(f, v) - evaluate(g, v);
        if (du == 0 && dv == 0) {
            emit(u, v);
        } else if (du == 0) {
            emit(u, u);
        } else if (dv == 0) {
            if (i + 2 == xs.size()) emit(v, v);
        } else if ((du < 0) != (dv < 0)) {
            const Rational z = u + (v - u) * du / (du - dv);
            emit(z, z);
        }
    }
    CoincidenceReport rep{window, {}, {}};
    for (const auto& [lo, hi] : pieces) {
        if (lo == hi) {
            if (window.contains(lo)) rep.isolated.push_back(lo);
        } else {
            rep.agreements.push_back({lo, hi});
        }
    }
    return rep;
}

} // namespace plf
