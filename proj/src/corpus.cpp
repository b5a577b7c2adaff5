#include "plf/corpus.hpp"
#include "plf/classify.hpp"

#include <algorithm>
#include <set>

namespace plf {

namespace {

constexpr long kMaxDen = 1L << 20;
constexpr size_t kMaxPoints = 32;
constexpr int kAttempts = 40;

bool within_bounds(const PLMap& f) {
    const auto& pts = f.points();
    if (pts.size() > kMaxPoints) return false;
    for (const auto& pt : pts) {
        if (denominator(pt.x) > kMaxDen || denominator(pt.y) > kMaxDen)
            return false;
    }
    return true;
}

long floor_times(const Rational& x, long d) {
    BigInt v = numerator(x) * d / denominator(x);
    return v.convert_to<long>();
}

// Single up or down bump across [lo/D, hi/D] with one or two interior
// vertices at safe lattice offsets. Requires hi - lo >= 6.
void bump_points(std::mt19937_64& rng, long lo, long hi, long d, bool up,
                 std::vector<Point>& out) {
    long w = hi - lo;
    auto vertex = [&](long x, long y) {
        out.push_back({Rational(x, d), Rational(y, d)});
    };
    out.push_back({Rational(lo, d), Rational(lo, d)});
    if (draw(rng, 2) == 0) {
        long x = lo + w / 2;
        long y = up ? x + std::max<long>(1, (hi - x) / 2)
                    : lo + (x - lo) / 2;
        vertex(x, y);
    } else {
        long x1 = lo + w / 3, x2 = lo + 2 * w / 3;
        if (up) {
            long y1 = x1 + std::max<long>(1, (hi - x1) / 3);
            long y2 = std::max(y1 + 1, x2 + (hi - x2) / 2);
            vertex(x1, y1);
            vertex(x2, y2);
        } else {
            long y2 = lo + (x2 - lo) / 2 + (x2 - lo) / 4;
            if (y2 >= x2) y2 = x2 - 1;
            long y1 = std::min(y2 - 1, lo + (x1 - lo) / 2);
            if (y1 <= lo) y1 = lo + 1;
            if (y2 <= y1) y2 = y1 + 1;
            vertex(x1, y1);
            vertex(x2, y2);
        }
    }
    out.push_back({Rational(hi, d), Rational(hi, d)});
}

struct F0Gen {
    PLMap f0;
    long d = 64;
};

F0Gen random_f0(std::mt19937_64& rng, int max_orbitals) {
    const long d = 64;
    static const int counts[7] = {1, 1, 1, 1, 2, 2, 3};
    int norb = std::min(counts[draw(rng, 7)], max_orbitals);
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::set<long> cutset;
        int guard = 0;
        while ((int)cutset.size() < 2 * norb && ++guard < 200)
            cutset.insert(draw_int(rng, 0, d));
        if ((int)cutset.size() < 2 * norb) continue;
        std::vector<long> cuts(cutset.begin(), cutset.end());
        bool ok = true;
        for (int i = 0; i < norb; ++i)
            if (cuts[2 * i + 1] - cuts[2 * i] < 6) ok = false;
        if (!ok) continue;
        std::vector<Point> pts;
        pts.push_back({Rational(0), Rational(0)});
        for (int i = 0; i < norb; ++i)
            bump_points(rng, cuts[2 * i], cuts[2 * i + 1], d,
                        draw(rng, 2) == 0, pts);
        pts.push_back({Rational(1), Rational(1)});
        return {make_plmap(pts), d};
    }
    return {x0(), 4};
}

// Orbitals of f0 on which the pair analysis runs and passes with the nice
// property. Optionally restricted to rising orbitals.
std::vector<std::pair<size_t, OrbitalAnalysis>>
nice_orbitals(const PLMap& f0, const PLMap& f1, bool up_only) {
    std::vector<std::pair<size_t, OrbitalAnalysis>> out;
    auto orbs = orbitals_of(f0);
    auto f1orbs = orbitals_of(f1);
    for (size_t i = 0; i < orbs.size(); ++i) {
        if (up_only && orbs[i].sign != Sign::Up) continue;
        bool meets = false, common = false;
        for (const auto& ob : f1orbs) {
            if (ob.span.hi <= orbs[i].span.lo || ob.span.lo >= orbs[i].span.hi)
                continue;
            meets = true;
            if (ob.span == orbs[i].span) common = true;
        }
        if (!meets || common) continue;
        try {
            auto an = analyze_orbital(f0, f1, orbs[i]);
            if (an.conditions.all() && an.nice) out.emplace_back(i, an);
        } catch (const Error&) {
        }
    }
    return out;
}

GeneratedPair gen_nice(std::mt19937_64& rng) {
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        auto [f0, d] = random_f0(rng, 3);
        auto orbs = orbitals_of(f0);
        size_t forced = draw(rng, orbs.size());
        NicePairSpec spec;
        spec.f0 = f0;
        for (size_t i = 0; i < orbs.size(); ++i) {
            bool choose = i == forced || draw(rng, 100) < 65;
            if (choose) {
                long lo = floor_times(orbs[i].span.lo, d);
                long hi = floor_times(orbs[i].span.hi, d);
                long w = hi - lo;
                long off = w * 2 / 5 + draw(rng, std::max<long>(1, w / 2));
                long p_int = lo + std::clamp<long>(off, 1, w - 1);
                OrbitalChoice ch;
                ch.orbital = i;
                ch.p = Rational(p_int, d);
                if (draw(rng, 10) < 3) {
                    Rational pre = evaluate_inverse(f0, ch.p);
                    Rational img = evaluate(f0, ch.p);
                    Rational xm, ym;
                    Rational tx(1 + (long)draw(rng, 3), 4);
                    Rational ty(1 + (long)draw(rng, 3), 4);
                    if (orbs[i].sign == Sign::Up) {
                        xm = pre + (ch.p - pre) * tx;
                        ym = pre + (img - pre) * ty;
                    } else {
                        xm = ch.p + (pre - ch.p) * tx;
                        ym = img + (pre - img) * ty;
                    }
                    ch.filler.push_back({xm, ym});
                }
                spec.choices.push_back(ch);
            } else {
                static const long exps[5] = {0, 0, 0, 1, -1};
                long e = exps[draw(rng, 5)];
                if (e != 0) spec.commuting.push_back({i, e});
            }
        }
        try {
            auto [a, b] = build_nice_pair(spec);
            if (within_bounds(a) && within_bounds(b))
                return {a, b, true, PairMode::Nice, false};
        } catch (const Error&) {
        }
    }
    return {x0(), x1(), true, PairMode::Nice, false};
}

// Chain of safe perturbations: each step inserts a bump supported strictly
// inside (p f0^-1, p) of a currently nice orbital, with k = 0. Both relator
// commutators stay trivial because the supports of f0 g1^-1 and g1^(f0) land
// on opposite sides of p.
GeneratedPair gen_chain(std::mt19937_64& rng) {
    GeneratedPair base = gen_nice(rng);
    PLMap f0 = base.f0, f1 = base.f1;
    size_t nsteps = draw(rng, 6);
    for (size_t s = 0; s < nsteps; ++s) {
        auto cands = nice_orbitals(f0, f1, false);
        if (cands.empty()) break;
        auto& [idx, an] = cands[draw(rng, cands.size())];
        Orbital orb = an.orbital;
        PLMap m0 = f0, m1 = f1;
        Orbital o = orb;
        if (orb.sign == Sign::Down) {
            m0 = mirrored(f0);
            m1 = mirrored(f1);
            o = mirrored(orb);
        }
        auto man = analyze_orbital(m0, m1, o);
        Rational p = *man.p_or_rho;
        Rational pre = evaluate_inverse(m0, p);
        Rational width = p - pre;
        Rational u = pre + width * Rational(1 + (long)draw(rng, 3), 8);
        Rational v = pre + width * Rational(5 + (long)draw(rng, 3), 8);
        Rational xm = (u + v) / 2;
        Rational ym = draw(rng, 2) == 0 ? xm + (v - xm) / 2
                                        : u + (xm - u) / 2;
        PLMap hm = make_plmap({{Rational(0), Rational(0)},
                               {u, u},
                               {xm, ym},
                               {v, v},
                               {Rational(1), Rational(1)}});
        PLMap h = orb.sign == Sign::Down ? mirrored(hm) : hm;
        static const long ts[3] = {1, -1, 2};
        PerturbationStep st;
        st.orbital = idx;
        st.h = h;
        st.t = ts[draw(rng, 3)];
        st.k = 0;
        st.kase = StepCase::FirstOrbital;
        PLMap next;
        try {
            next = perturb(f0, f1, st);
        } catch (const Error&) {
            break;
        }
        if (!within_bounds(next)) break;
        f1 = next;
    }
    return {f0, f1, true, PairMode::PerturbChain, false};
}

// Hand-assembled pairs whose first f1 orbitals sit left of the agreement
// point, so the decomposition has real work to do. Three shapes: a plain
// orbital plus gap, two orbitals plus gap, and a conjugate-power window that
// forces a common root step.
GeneratedPair gen_outside(std::mt19937_64& rng) {
    const long d = 64;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        PLMap f0;
        if (draw(rng, 2) == 0) {
            f0 = x0();
        } else {
            std::vector<Point> pts;
            bump_points(rng, 0, d, d, true, pts);
            f0 = make_plmap(pts);
        }
        long a_int = d / 4 + draw_int(rng, 0, d * 5 / 16);
        Rational alpha(a_int, d);
        Rational pulled = evaluate_inverse(f0, alpha);
        long lo_int = floor_times(pulled, d) + 1;
        int kindp = (int)draw(rng, 100);
        int kind = kindp < 60 ? 1 : (kindp < 85 ? 3 : 2);
        size_t need = kind == 2 ? 5 : 3;
        long room = a_int - lo_int;
        if (room < (long)need) continue;
        std::set<long> chosen;
        int guard = 0;
        while (chosen.size() < need && ++guard < 300)
            chosen.insert(lo_int + (long)draw(rng, room));
        if (chosen.size() < need) continue;
        std::vector<long> pos(chosen.begin(), chosen.end());

        // Bump vertex stays below both f0 and the right endpoint.
        auto mid_bump = [&](long blo, long bhi, PLMapBuilder& b) {
            Rational rlo(blo, d), rhi(bhi, d);
            Rational xm = (rlo + rhi) / 2;
            Rational ym = (xm + evaluate(f0, xm)) / 2;
            Rational cap = (xm + rhi) / 2;
            if (ym > cap) ym = cap;
            b.append_identity(rlo);
            b.append_point({xm, ym});
            b.append_point({rhi, rhi});
        };

        PLMap f1;
        std::vector<Interval> want;
        size_t bumps = 0;
        try {
            PLMapBuilder b;
            b.append_point({Rational(0), Rational(0)});
            if (kind == 1 || kind == 3) {
                long b1 = pos[0], d1 = pos[1], rs = pos[2];
                mid_bump(b1, d1, b);
                bumps = 1;
                Rational rrs(rs, d);
                b.append_identity(rrs);
                b.append_point({alpha, evaluate(f0, alpha)});
                if (kind == 1) {
                    Rational d1f0 = evaluate(f0, Rational(d1, d));
                    b.append_map(f0, {alpha, d1f0});
                    Rational p = evaluate(f0, rrs);
                    Rational gm = (d1f0 + p) / 2;
                    Rational fh = evaluate(f0, d1f0);
                    Rational top = gm > fh ? gm : fh;
                    Rational gv = (top + evaluate(f0, gm)) / 2;
                    b.append_point({gm, gv});
                    b.append_point({p, evaluate(f0, p)});
                    b.append_map(f0, {p, Rational(1)});
                    want = {{alpha, d1f0}, {p, Rational(1)}};
                } else {
                    Rational b1f0 = evaluate(f0, Rational(b1, d));
                    Rational d1f0 = evaluate(f0, Rational(d1, d));
                    b.append_map(f0, {alpha, b1f0});
                    Rational rb1(b1, d), rd1(d1, d);
                    Rational uxm = (rb1 + rd1) / 2;
                    Rational uym = (uxm + evaluate(f0, uxm)) / 2;
                    Rational ucap = (uxm + rd1) / 2;
                    if (uym > ucap) uym = ucap;
                    PLMap ub = make_plmap({{Rational(0), Rational(0)},
                                           {rb1, rb1},
                                           {uxm, uym},
                                           {rd1, rd1},
                                           {Rational(1), Rational(1)}});
                    PLMap phi0 = conjugate(ub, f0);
                    long m = (long)draw(rng, 2) + 1;
                    if (draw(rng, 2) == 0) m = -m;
                    b.append_map(compose(power(phi0, -m), f0), {b1f0, d1f0});
                    b.append_map(f0, {d1f0, Rational(1)});
                    want = {{alpha, b1f0}, {d1f0, Rational(1)}};
                }
            } else {
                long b1 = pos[0], d1 = pos[1], b2 = pos[2], d2 = pos[3],
                     rs = pos[4];
                mid_bump(b1, d1, b);
                mid_bump(b2, d2, b);
                bumps = 2;
                Rational rrs(rs, d);
                b.append_identity(rrs);
                b.append_point({alpha, evaluate(f0, alpha)});
                Rational d2f0 = evaluate(f0, Rational(d2, d));
                b.append_map(f0, {alpha, d2f0});
                Rational p = evaluate(f0, rrs);
                Rational gm = (d2f0 + p) / 2;
                Rational fh = evaluate(f0, d2f0);
                Rational top = gm > fh ? gm : fh;
                Rational gv = (top + evaluate(f0, gm)) / 2;
                b.append_point({gm, gv});
                b.append_point({p, evaluate(f0, p)});
                b.append_map(f0, {p, Rational(1)});
                want = {{alpha, d2f0}, {p, Rational(1)}};
            }
            f1 = b.finish();
        } catch (const Error&) {
            continue;
        }
        if (!within_bounds(f1)) continue;
        auto rep = coincidence_points(f0, f1, {Rational(0), Rational(1)});
        if (!rep.isolated.empty() || rep.agreements != want) continue;
        if (orbitals_of(f1).size() != bumps + 1) continue;
        if (!decide_oracle(f0, f1)) continue;
        return {f0, f1, true, PairMode::OutsideFamily, false};
    }
    // Frozen known-good pair: one detached orbital, one gap on each side.
    PLMap f1 = make_plmap({{Rational(0), Rational(0)},
                           {Rational(5, 32), Rational(5, 32)},
                           {Rational(21, 128), Rational(43, 256)},
                           {Rational(11, 64), Rational(11, 64)},
                           {Rational(3, 16), Rational(3, 16)},
                           {Rational(1, 4), Rational(1, 2)},
                           {Rational(9, 32), Rational(35, 64)},
                           {Rational(5, 16), Rational(9, 16)},
                           {Rational(11, 32), Rational(19, 32)},
                           {Rational(23, 64), Rational(77, 128)},
                           {Rational(3, 8), Rational(5, 8)},
                           {Rational(1, 2), Rational(3, 4)},
                           {Rational(1), Rational(1)}});
    return {x0(), f1, true, PairMode::OutsideFamily, false};
}

GeneratedPair gen_commuting(std::mt19937_64& rng) {
    auto [f0, d] = random_f0(rng, 2);
    static const long exps[4] = {0, 1, -1, 2};
    long e = exps[draw(rng, 4)];
    return {f0, power(f0, e), false, PairMode::Commuting, false};
}

// Base for mutants: a nice pair with at least one rising analyzable orbital
// (mirroring the whole pair when only falling ones exist).
struct MutantBase {
    PLMap f0, f1;
    size_t idx = 0;
    OrbitalAnalysis an;
};

MutantBase mutant_base(std::mt19937_64& rng) {
    GeneratedPair g = gen_nice(rng);
    auto ups = nice_orbitals(g.f0, g.f1, true);
    if (ups.empty()) {
        g.f0 = mirrored(g.f0);
        g.f1 = mirrored(g.f1);
        ups = nice_orbitals(g.f0, g.f1, true);
    }
    auto& [idx, an] = ups[draw(rng, ups.size())];
    return {g.f0, g.f1, idx, an};
}

PLMap splice_bump(const PLMap& f1, const Rational& u, const Rational& v) {
    Rational xm = (u + v) / 2;
    Rational ym = xm + (v - xm) / 2;
    PLMapBuilder b;
    b.append_point({Rational(0), Rational(0)});
    if (u > 0) b.append_map(f1, {Rational(0), u});
    b.append_point({xm, ym});
    b.append_point({v, v});
    b.append_map(f1, {v, Rational(1)});
    return b.finish();
}

// First orbital of f1 pulled down to touch the left end of the f0 orbital.
GeneratedPair gen_mutant_i(std::mt19937_64& rng) {
    MutantBase mb = mutant_base(rng);
    Rational a = mb.an.orbital.span.lo;
    Rational b1 = mb.an.f1_orbitals.front().span.lo;
    Rational pre = evaluate_inverse(mb.f0, *mb.an.p_or_rho);
    Rational hi = b1 < pre ? b1 : pre;
    Rational v = a + (hi - a) / 2;
    PLMap f1m = splice_bump(mb.f1, a, v);
    bool expect = decide_oracle(mb.f0, f1m);
    return {mb.f0, f1m, expect, PairMode::MutantI, false};
}

// Detach f1 from f0 on a suffix of the orbital so no agreement interval
// reaches the right end.
GeneratedPair gen_mutant_ii(std::mt19937_64& rng) {
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        MutantBase mb = mutant_base(rng);
        Rational p = *mb.an.p_or_rho;
        Rational c = mb.an.orbital.span.hi;
        Rational w = p + (c - p) * Rational(1 + (long)draw(rng, 2), 4);
        Rational v2 = w + (c - w) * Rational(1 + (long)draw(rng, 2), 4);
        Rational y2 = (evaluate(mb.f0, w) + evaluate(mb.f0, v2)) / 2;
        PLMapBuilder b;
        b.append_point({Rational(0), Rational(0)});
        b.append_map(mb.f1, {Rational(0), w});
        b.append_point({v2, y2});
        b.append_point({c, c});
        if (c < 1) b.append_map(mb.f1, {c, Rational(1)});
        PLMap f1m;
        try {
            f1m = b.finish();
        } catch (const Error&) {
            continue;
        }
        if (!within_bounds(f1m)) continue;
        if (agreement_bound(mb.f0, f1m, c, Anchor::FromRight)) continue;
        bool expect = decide_oracle(mb.f0, f1m);
        return {mb.f0, f1m, expect, PairMode::MutantII, false};
    }
    MutantBase mb = mutant_base(rng);
    return {mb.f0, mb.f1, true, PairMode::MutantII, false};
}

// Push the agreement point right of the image of the last f1 orbital start
// by precomposing with a bump between them.
GeneratedPair gen_mutant_iv(std::mt19937_64& rng) {
    MutantBase mb = mutant_base(rng);
    Rational bn = mb.an.f1_orbitals.back().span.lo;
    Rational bnf0 = evaluate(mb.f0, bn);
    Rational c = mb.an.orbital.span.hi;
    Rational lo_w = bnf0 + (c - bnf0) / 4;
    Rational e = bnf0 + (c - bnf0) / 2;
    Rational xm = (lo_w + e) / 2;
    Rational ym = xm + (e - xm) / 2;
    PLMap w = make_plmap({{Rational(0), Rational(0)},
                          {lo_w, lo_w},
                          {xm, ym},
                          {e, e},
                          {Rational(1), Rational(1)}});
    PLMap f1m = compose(w, mb.f1);
    bool expect = decide_oracle(mb.f0, f1m);
    return {mb.f0, f1m, expect, PairMode::MutantIV, false};
}

// Insert an orbital so far left that its f0 image stays at or below the
// start of the last f1 orbital.
GeneratedPair gen_mutant_v(std::mt19937_64& rng) {
    MutantBase mb = mutant_base(rng);
    Rational a = mb.an.orbital.span.lo;
    Rational bn = mb.an.f1_orbitals.back().span.lo;
    Rational b1 = mb.an.f1_orbitals.front().span.lo;
    Rational cap = evaluate_inverse(mb.f0, bn);
    Rational hi = cap < b1 ? cap : b1;
    Rational u = a + (hi - a) / 4;
    Rational v = a + (hi - a) / 2;
    PLMap f1m = splice_bump(mb.f1, u, v);
    bool expect = decide_oracle(mb.f0, f1m);
    return {mb.f0, f1m, expect, PairMode::MutantV, false};
}

// Nudge one interior vertex of f1; the outcome is whatever the relation
// check says.
GeneratedPair gen_mutant_nudge(std::mt19937_64& rng) {
    GeneratedPair base = draw(rng, 2) == 0 ? gen_nice(rng) : gen_outside(rng);
    auto pts = base.f1.points();
    if (pts.size() < 3) return base;
    size_t i = 1 + draw(rng, pts.size() - 2);
    if (draw(rng, 2) == 0)
        pts[i].y += (pts[i + 1].y - pts[i].y) / 4;
    else
        pts[i].y -= (pts[i].y - pts[i - 1].y) / 4;
    PLMap f1m;
    try {
        f1m = make_plmap(pts);
    } catch (const Error&) {
        return base;
    }
    if (!within_bounds(f1m)) return base;
    bool expect = decide_oracle(base.f0, f1m);
    return {base.f0, f1m, expect, PairMode::MutantNudge, false};
}

} // namespace

const char* pair_mode_str(PairMode m) {
    switch (m) {
    case PairMode::Nice: return "nice";
    case PairMode::PerturbChain: return "perturb_chain";
    case PairMode::OutsideFamily: return "outside_family";
    case PairMode::Commuting: return "commuting";
    case PairMode::MutantI: return "mutant_i";
    case PairMode::MutantII: return "mutant_ii";
    case PairMode::MutantIV: return "mutant_iv";
    case PairMode::MutantV: return "mutant_v";
    case PairMode::MutantNudge: return "mutant_nudge";
    }
    return "?";
}

uint64_t draw(std::mt19937_64& rng, uint64_t n) {
    return n <= 1 ? 0 : rng() % n;
}

long draw_int(std::mt19937_64& rng, long lo, long hi) {
    return lo + (long)draw(rng, (uint64_t)(hi - lo + 1));
}

GenWord random_word(std::mt19937_64& rng, int max_index, int max_letters,
                    long max_exp) {
    size_t n = 1 + draw(rng, (uint64_t)max_letters);
    std::vector<Letter> letters;
    for (size_t i = 0; i < n; ++i) {
        int idx = (int)draw(rng, (uint64_t)max_index + 1);
        long e = 1 + (long)draw(rng, (uint64_t)max_exp);
        if (draw(rng, 2) == 0) e = -e;
        letters.push_back({idx, e});
    }
    return make_word(letters);
}

GeneratedPair random_pair(uint64_t seed, PairMode mode) {
    std::mt19937_64 rng(seed);
    GeneratedPair g;
    switch (mode) {
    case PairMode::Nice: g = gen_nice(rng); break;
    case PairMode::PerturbChain: g = gen_chain(rng); break;
    case PairMode::OutsideFamily: g = gen_outside(rng); break;
    case PairMode::Commuting: g = gen_commuting(rng); break;
    case PairMode::MutantI: g = gen_mutant_i(rng); break;
    case PairMode::MutantII: g = gen_mutant_ii(rng); break;
    case PairMode::MutantIV: g = gen_mutant_iv(rng); break;
    case PairMode::MutantV: g = gen_mutant_v(rng); break;
    case PairMode::MutantNudge: g = gen_mutant_nudge(rng); break;
    }
    if (draw(rng, 2) == 0) {
        g.f0 = mirrored(g.f0);
        g.f1 = mirrored(g.f1);
        g.mirrored_pair = true;
    }
    return g;
}

std::vector<GeneratedPair> build_corpus(size_t count, uint64_t base_seed) {
    static const PairMode table[12] = {
        PairMode::Nice,         PairMode::PerturbChain,
        PairMode::OutsideFamily, PairMode::Nice,
        PairMode::PerturbChain, PairMode::OutsideFamily,
        PairMode::MutantI,      PairMode::MutantII,
        PairMode::MutantIV,     PairMode::MutantV,
        PairMode::MutantNudge,  PairMode::Commuting,
    };
    std::vector<GeneratedPair> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i)
        out.push_back(random_pair(base_seed + i * 1315423911ull, table[i % 12]));
    return out;
}

} // namespace plf
