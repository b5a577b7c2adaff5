#include "plf/orbitals.hpp"

#include <algorithm>

namespace plf {

std::vector<Orbital> orbitals_of(const PLMap& f) {
    const auto rep = coincidence_points(f, PLMap::identity(), {0, 1});
    // Closed pieces of the fixed set, including the endpoints of [0,1].
    std::vector<std::pair<Rational, Rational>> fixed;
    fixed.emplace_back(0, 0);
    for (const auto& x : rep.isolated) fixed.emplace_back(x, x);
    for (const auto& iv : rep.agreements) fixed.emplace_back(iv.lo, iv.hi);
    fixed.emplace_back(1, 1);
    std::sort(fixed.begin(), fixed.end());
    std::vector<std::pair<Rational, Rational>> merged;
    for (const auto& piece : fixed) {
        if (!merged.empty() && piece.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, piece.second);
        else
            merged.push_back(piece);
    }
    std::vector<Orbital> out;
    for (size_t i = 0; i + 1 < merged.size(); ++i) {
        const Rational &lo = merged[i].second, &hi = merged[i + 1].first;
        const Rational mid = (lo + hi) / 2;
        const Sign sign = evaluate(f, mid) > mid ? Sign::Up : Sign::Down;
        out.push_back({{lo, hi}, sign});
    }
    return out;
}

std::vector<Interval> subgroup_support(const std::vector<PLMap>& gens) {
    if (gens.empty()) throw DomainError("no generators");
    std::vector<Interval> spans;
    for (const auto& g : gens)
        for (const auto& orb : orbitals_of(g)) spans.push_back(orb.span);
    std::sort(spans.begin(), spans.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    // Open intervals: a shared endpoint joins two components only when some
    // other interval covers it, which the strict-overlap sweep realizes.
    std::vector<Interval> out;
    for (const auto& iv : spans) {
        if (!out.empty() && iv.lo < out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

std::pair<Rational, Rational> boundary_slopes(const PLMap& f, const Orbital& orb) {
    const auto all = orbitals_of(f);
    if (std::find(all.begin(), all.end(), orb) == all.end())
        throw DomainError("not an orbital of the map: " + orb.span.str());
    return {slope_right_at(f, orb.span.lo), slope_left_at(f, orb.span.hi)};
}

Orbital corresponding_orbital(const Orbital& orb, const PLMap& h) {
    return {{evaluate(h, orb.span.lo), evaluate(h, orb.span.hi)}, orb.sign};
}

namespace {
long g_iter_cap = 10000;
}

long default_iter_cap() { return g_iter_cap; }

void set_default_iter_cap(long cap) {
    if (cap <= 0) throw DomainError("iteration cap must be positive");
    g_iter_cap = cap;
}

Rational iterate_toward_end(const PLMap& f, const Rational& x, long n, long cap) {
    if (cap <= 0) cap = g_iter_cap;
    if (evaluate(f, x) == x)
        throw DomainError("fixed point: " + rat_str(x));
    const long steps = n < 0 ? -n : n;
    if (steps > cap)
        throw DomainError("iteration count exceeds cap");
    Rational cur = x;
    const PLMap g = n < 0 ? invert(f) : f;
    for (long i = 0; i < steps; ++i) cur = evaluate(g, cur);
    return cur;
}

} // namespace plf
