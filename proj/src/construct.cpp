#include "plf/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>

namespace plf {

const char* step_case_str(StepCase c) {
    switch (c) {
    case StepCase::FirstOrbital: return "first_orbital";
    case StepCase::FirstGap: return "first_gap";
    case StepCase::CommonRoot: return "common_root";
    }
    return "first_orbital";
}

StepCase step_case_from(const std::string& s) {
    if (s == "first_orbital") return StepCase::FirstOrbital;
    if (s == "first_gap") return StepCase::FirstGap;
    if (s == "common_root") return StepCase::CommonRoot;
    throw ParseError("unknown step case: " + s);
}

namespace {

bool spans_overlap(const Interval& a, const Interval& b) {
    return a.lo < b.hi && b.lo < a.hi;
}

} // namespace

std::pair<PLMap, PLMap> build_nice_pair(const NicePairSpec& spec) {
    const PLMap& f0 = spec.f0;
    const auto orbs = orbitals_of(f0);
    if (orbs.empty()) throw DomainError("build_nice_pair: f0 is the identity");
    if (spec.choices.empty())
        throw DomainError("build_nice_pair: at least one orbital choice is required");

    std::vector<const OrbitalChoice*> chosen(orbs.size(), nullptr);
    std::vector<std::optional<long>> comm(orbs.size());
    for (const auto& ch : spec.choices) {
        if (ch.orbital >= orbs.size())
            throw DomainError("build_nice_pair: orbital index out of range");
        if (chosen[ch.orbital])
            throw DomainError("build_nice_pair: orbital assigned twice");
        chosen[ch.orbital] = &ch;
    }
    for (const auto& cm : spec.commuting) {
        if (cm.orbital >= orbs.size())
            throw DomainError("build_nice_pair: orbital index out of range");
        if (chosen[cm.orbital] || comm[cm.orbital])
            throw DomainError("build_nice_pair: orbital assigned twice");
        comm[cm.orbital] = cm.power;
    }

    PLMapBuilder b;
    b.append_point({0, 0});
    for (size_t i = 0; i < orbs.size(); ++i) {
        const Orbital& orb = orbs[i];
        const Rational a = orb.span.lo, c = orb.span.hi;
        if (chosen[i]) {
            const OrbitalChoice& ch = *chosen[i];
            if (!(a < ch.p && ch.p < c))
                throw DomainError("build_nice_pair: p must lie strictly inside " +
                                  orb.span.str());
            const Rational img = evaluate(f0, ch.p);
            const Rational pre = evaluate_inverse(f0, ch.p);
            if (orb.sign == Sign::Up) {
                b.append_identity(pre);
                for (const Point& q : ch.filler) {
                    if (!(pre < q.x && q.x < ch.p && pre < q.y && q.y < img))
                        throw DomainError("build_nice_pair: filler vertex outside the bridge box");
                    b.append_point(q);
                }
                b.append_point({ch.p, img});
                b.append_map(f0, {ch.p, c});
            } else {
                b.append_identity(a);
                b.append_map(f0, {a, ch.p});
                for (const Point& q : ch.filler) {
                    if (!(ch.p < q.x && q.x < pre && img < q.y && q.y < pre))
                        throw DomainError("build_nice_pair: filler vertex outside the bridge box");
                    b.append_point(q);
                }
                b.append_point({pre, pre});
            }
        } else if (comm[i] && *comm[i] != 0) {
            b.append_identity(a);
            b.append_map(power(f0, *comm[i]), orb.span);
        }
    }
    b.append_identity(1);
    PLMap f1 = b.finish();

    const Verdict v = decide_structural(f0, f1);
    if (v.decision != Decision::Standard)
        throw VerificationError("build_nice_pair: result is not structurally standard (" +
                                v.reason + ")");
    for (const auto& ch : spec.choices) {
        const OrbitalAnalysis an = analyze_orbital(f0, f1, orbs[ch.orbital]);
        if (!an.nice || an.has_outside())
            throw VerificationError("build_nice_pair: chosen orbital " +
                                    orbs[ch.orbital].span.str() + " is not nice");
    }
    return {f0, f1};
}

PLMap perturb(const PLMap& f0, const PLMap& f1, const PerturbationStep& step) {
    const auto orbs = orbitals_of(f0);
    if (step.orbital >= orbs.size())
        throw DomainError("perturb: orbital index out of range");
    const Orbital& orb = orbs[step.orbital];

    // Validate in up-bump orientation.
    PLMap F0 = f0, F1 = f1, H = step.h;
    Orbital O = orb;
    std::optional<Rational> S = step.s;
    if (orb.sign == Sign::Down) {
        F0 = mirrored(f0);
        F1 = mirrored(f1);
        H = mirrored(step.h);
        O = mirrored(orb);
        if (S) S = Rational(1) - *S;
    }
    const Rational c = O.span.hi;
    const OrbitalAnalysis an = analyze_orbital(F0, F1, O);
    if (!an.conditions.all())
        throw DomainError("perturb: structural conditions fail on orbital " +
                          orb.span.str());
    const Rational p = *an.p_or_rho;
    const Rational pre = evaluate_inverse(F0, p);
    std::optional<Rational> cap;
    if (S) {
        if (!(p < *S && *S < c))
            throw DomainError("perturb: s must lie strictly between the agreement "
                              "bound and the orbital end");
        cap = evaluate_inverse(F0, *S);
    }
    for (const Orbital& ho : orbitals_of(H)) {
        if (ho.span.lo < pre)
            throw DomainError("perturb: support of h reaches below the pulled-back "
                              "agreement bound " + rat_str(pre));
        if (cap) {
            if (ho.span.hi > *cap)
                throw DomainError("perturb: support of h exceeds the pulled-back "
                                  "window end " + rat_str(*cap));
        } else if (ho.span.hi >= c) {
            throw DomainError("perturb: support of h reaches the orbital end");
        }
    }

    // g1 = h^t f0^-1 h^k f0 f1 in word order.
    PLMap g = compose(power(step.h, step.t), invert(f0));
    g = compose(g, power(step.h, step.k));
    g = compose(g, f0);
    g = compose(g, f1);
    return g;
}

namespace {

struct WorkItem {
    Interval iv;
    bool is_orbital;
    Interval source;
};

struct UpWork {
    PLMap niced;
    std::vector<PerturbationStep> steps;
    OrbitalWork work;
};

// Decomposition on one up-bump of f0, working against the current partially
// niced map. Returns the map with this orbital niced and the steps that
// rebuild g1 here, already verified by applying them.
UpWork work_up(const PLMap& f0, const PLMap& g1, const Orbital& orb,
               const PLMap& nice_in, size_t orbital_index) {
    const Rational a = orb.span.lo, c = orb.span.hi;

    const OrbitalAnalysis an = analyze_orbital(f0, g1, orb);
    if (!an.conditions.all())
        throw VerificationError("decompose: structural conditions fail on " +
                                orb.span.str() + " despite the relation check");
    const Rational p = *an.p_or_rho;
    if (!an.r)
        throw VerificationError("decompose: no attained first coincidence on " +
                                orb.span.str());
    const Rational alpha = *an.r;
    const Rational pre = evaluate_inverse(f0, p);
    if (evaluate(g1, pre) != pre)
        throw VerificationError("decompose: g1 moves the pulled-back agreement "
                                "bound " + rat_str(pre));

    UpWork out;
    out.work.orbital = orbital_index;
    out.work.alpha = alpha;

    // Surgery: identity across the recovered zone, g1's own graph across the
    // middle, f0 beyond the first coincidence.
    PLMapBuilder b;
    b.append_point({0, 0});
    if (a > 0) b.append_map(nice_in, {0, a});
    b.append_identity(pre);
    if (alpha > pre) b.append_map(g1, {pre, alpha});
    b.append_map(f0, {alpha, c});
    if (c < 1) b.append_map(nice_in, {c, 1});
    out.niced = b.finish();

    // Work set: images of the erased orbitals plus the disagreement gaps
    // right of the first coincidence.
    std::vector<WorkItem> items;
    for (const Orbital& o : orbitals_of(g1))
        if (a <= o.span.lo && o.span.hi <= pre)
            items.push_back({{evaluate(f0, o.span.lo), evaluate(f0, o.span.hi)},
                             true,
                             o.span});
    const PLMap u = compose(f0, invert(g1));
    for (const Orbital& o : orbitals_of(u))
        if (alpha <= o.span.lo && o.span.hi <= c)
            items.push_back({o.span, false, o.span});

    std::sort(items.begin(), items.end(), [](const WorkItem& x, const WorkItem& y) {
        return x.iv.lo < y.iv.lo ||
               (x.iv.lo == y.iv.lo && (x.iv.hi < y.iv.hi ||
                                       (x.iv.hi == y.iv.hi && x.is_orbital < y.is_orbital)));
    });
    for (size_t i = 0; i + 1 < items.size(); ++i)
        if (items[i + 1].iv.lo < items[i].iv.hi && !(items[i].iv == items[i + 1].iv))
            throw VerificationError("decompose: overlapping unequal work intervals " +
                                    items[i].iv.str() + " and " + items[i + 1].iv.str());
    for (const WorkItem& it : items) out.work.work_set.push_back(it.iv);

    PLMap cur = out.niced;
    const PLMap conj = conjugate(g1, f0);
    for (size_t i = 0; i < items.size();) {
        PerturbationStep st;
        st.orbital = orbital_index;
        if (i + 1 < items.size() && items[i].iv == items[i + 1].iv) {
            // The image of an erased orbital coincides with a gap: both
            // restrictions are powers of one root.
            const Interval& I = items[i].iv;
            const PLMap g_part = restrict_to(conj, I);
            const PLMap h_part = restrict_to(u, I);
            const RootCertificate cert = common_root(g_part, h_part, I);
            st.h = conjugate(cert.root, invert(f0));
            st.t = cert.exp_g;
            st.k = -cert.exp_h;
            st.kase = StepCase::CommonRoot;
            i += 2;
        } else if (items[i].is_orbital) {
            st.h = restrict_to(g1, items[i].source);
            st.t = 1;
            st.k = 0;
            st.kase = StepCase::FirstOrbital;
            i += 1;
        } else {
            const PLMap psi = restrict_to(u, items[i].iv);
            st.h = compose(compose(f0, invert(psi)), invert(f0));
            st.t = 0;
            st.k = 1;
            st.kase = StepCase::FirstGap;
            i += 1;
        }
        cur = perturb(f0, cur, st);
        out.steps.push_back(std::move(st));
    }

    if (!is_identity_on(compose(cur, invert(g1)), orb.span))
        throw VerificationError("decompose: steps fail to rebuild g1 on " +
                                orb.span.str());
    return out;
}

} // namespace

DecompositionTrace decompose(const PLMap& f0, const PLMap& g1) {
    if (!decide_oracle(f0, g1))
        throw DomainError("decompose: pair fails the relation check");

    DecompositionTrace tr;
    tr.nice_f1 = g1;
    const auto orbs = orbitals_of(f0);
    const auto g1orbs = orbitals_of(g1);

    for (size_t idx = 0; idx < orbs.size(); ++idx) {
        const Orbital& A = orbs[idx];
        bool meets = false, common = false;
        for (const Orbital& B : g1orbs) {
            if (!spans_overlap(A.span, B.span)) continue;
            meets = true;
            if (B.span == A.span) common = true;
        }
        if (!meets || common) continue;

        const OrbitalAnalysis an = analyze_orbital(f0, g1, A);
        if (an.nice && !an.has_outside()) continue;

        if (A.sign == Sign::Up) {
            UpWork w = work_up(f0, g1, A, tr.nice_f1, idx);
            tr.nice_f1 = std::move(w.niced);
            for (auto& st : w.steps) tr.steps.push_back(std::move(st));
            tr.work.push_back(std::move(w.work));
        } else {
            const size_t n = orbs.size();
            UpWork w = work_up(mirrored(f0), mirrored(g1), mirrored(A),
                               mirrored(tr.nice_f1), n - 1 - idx);
            tr.nice_f1 = mirrored(w.niced);
            for (auto& st : w.steps) {
                PerturbationStep back;
                back.orbital = idx;
                back.h = mirrored(st.h);
                back.t = st.t;
                back.k = st.k;
                back.kase = st.kase;
                tr.steps.push_back(std::move(back));
            }
            OrbitalWork ow;
            ow.orbital = idx;
            ow.alpha = Rational(1) - w.work.alpha;
            for (auto it = w.work.work_set.rbegin(); it != w.work.work_set.rend(); ++it)
                ow.work_set.push_back(mirrored(*it));
            tr.work.push_back(std::move(ow));
        }

        const OrbitalAnalysis after = analyze_orbital(f0, tr.nice_f1, A);
        if (!after.nice || after.has_outside())
            throw VerificationError("decompose: orbital " + A.span.str() +
                                    " is not nice after surgery");
    }

    if (!(replay(f0, tr.nice_f1, tr.steps) == g1))
        throw VerificationError("decompose: replay does not reproduce the input");
    return tr;
}

PLMap replay(const PLMap& f0, const PLMap& nice_f1,
             const std::vector<PerturbationStep>& steps) {
    PLMap cur = nice_f1;
    for (const auto& st : steps) cur = perturb(f0, cur, st);
    return cur;
}

namespace {

BigInt iroot(const BigInt& n, unsigned k) {
    if (n <= 1 || k <= 1) return n;
    BigInt lo = 1, hi = BigInt(1) << (boost::multiprecision::msb(n) / k + 1);
    while (lo < hi) {
        const BigInt mid = (lo + hi + 1) / 2;
        if (boost::multiprecision::pow(mid, k) <= n) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

// Exponent vector of a positive rational over small primes, with any rough
// leftover reduced to a perfect-power base and kept as an atomic factor.
void accumulate_exponents(std::map<BigInt, long>& out, BigInt n, long scale) {
    if (n <= 1) return;
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        while (n % p == 0) {
            out[p] += scale;
            n /= p;
        }
    }
    for (unsigned long p = 7; p <= 1000000 && BigInt(p) * p <= n; p += 2) {
        while (n % p == 0) {
            out[p] += scale;
            n /= p;
        }
    }
    if (n > 1) {
        unsigned best = 1;
        BigInt base = n;
        const unsigned top = boost::multiprecision::msb(n) + 1;
        for (unsigned k = top; k >= 2; --k) {
            const BigInt r = iroot(n, k);
            if (r > 1 && boost::multiprecision::pow(r, k) == n) {
                best = k;
                base = r;
                break;
            }
        }
        out[base] += scale * static_cast<long>(best);
    }
}

std::map<BigInt, long> slope_exponents(const Rational& lam) {
    std::map<BigInt, long> out;
    accumulate_exponents(out, numerator(lam), 1);
    accumulate_exponents(out, denominator(lam), -1);
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

long egcd(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    long x1, y1;
    const long g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

} // namespace

RootCertificate common_root(const PLMap& g, const PLMap& h, const Interval& orb) {
    auto has_orbital = [&](const PLMap& f) {
        for (const Orbital& o : orbitals_of(f))
            if (o.span == orb) return true;
        return false;
    };
    if (!has_orbital(g) || !has_orbital(h))
        throw DomainError("common_root: " + orb.str() +
                          " is not an orbital of both maps");

    const auto vg = slope_exponents(slope_right_at(g, orb.lo));
    const auto vh = slope_exponents(slope_right_at(h, orb.lo));

    // The exponent vectors must be parallel for a common power base to exist.
    std::vector<BigInt> keys;
    for (const auto& [k, e] : vg) keys.push_back(k);
    for (const auto& [k, e] : vh)
        if (!vg.count(k)) keys.push_back(k);
    std::vector<long> a, bb;
    for (const BigInt& k : keys) {
        a.push_back(vg.count(k) ? vg.at(k) : 0);
        bb.push_back(vh.count(k) ? vh.at(k) : 0);
    }
    for (size_t i = 0; i < keys.size(); ++i)
        for (size_t j = i + 1; j < keys.size(); ++j)
            if (static_cast<long long>(a[i]) * bb[j] != static_cast<long long>(a[j]) * bb[i])
                throw IncommensurableError("common_root: leading slopes " +
                                           rat_str(slope_right_at(g, orb.lo)) + " and " +
                                           rat_str(slope_right_at(h, orb.lo)) +
                                           " admit no common power");

    if (!is_identity(commutator(g, h)))
        throw DomainError("common_root: maps do not commute");

    long content = 0;
    for (long e : a) content = std::gcd(content, e < 0 ? -e : e);
    if (content == 0)
        throw DomainError("common_root: leading slope of the first map is 1");
    std::vector<long> w;
    for (long e : a) w.push_back(e / content);
    size_t pivot = 0;
    while (w[pivot] == 0) ++pivot;
    const long m_full = content;
    const long n_full = bb[pivot] / w[pivot];
    for (size_t i = 0; i < w.size(); ++i)
        if (bb[i] != n_full * w[i])
            throw IncommensurableError("common_root: exponent vectors are not "
                                       "integer multiples of a common base");

    long x, y;
    const long d = egcd(m_full, n_full, x, y);
    const PLMap root = compose(power(g, x), power(h, y));
    const long exp_g = m_full / d;
    const long exp_h = n_full / d;
    if (!(power(root, exp_g) == g) || !(power(root, exp_h) == h))
        throw VerificationError("common_root: candidate root fails exact verification");
    return {root, exp_g, exp_h};
}

} // namespace plf
