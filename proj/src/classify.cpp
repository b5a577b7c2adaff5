#include "plf/classify.hpp"

#include "plf/words.hpp"

#include <utility>

namespace plf {

const char* category_str(Category c) {
    switch (c) {
    case Category::Main: return "main";
    case Category::Inside: return "inside";
    case Category::Outside: return "outside";
    case Category::Uncategorized: return "uncategorized";
    }
    return "uncategorized";
}

const char* decision_str(Decision d) {
    switch (d) {
    case Decision::Standard: return "standard";
    case Decision::NotStandard: return "not_standard";
    case Decision::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

bool OrbitalAnalysis::has_outside() const {
    for (Category c : categories)
        if (c == Category::Outside) return true;
    return false;
}

bool OrbitalAnalysis::has_uncategorized() const {
    for (Category c : categories)
        if (c == Category::Uncategorized) return true;
    return false;
}

namespace {

bool spans_overlap(const Interval& a, const Interval& b) {
    return a.lo < b.hi && b.lo < a.hi;
}

OrbitalAnalysis analyze_up(const PLMap& f0, const PLMap& f1, const Orbital& orb) {
    const Rational a = orb.span.lo;
    const Rational c = orb.span.hi;

    OrbitalAnalysis an;
    an.orbital = orb;
    for (const Orbital& b : orbitals_of(f1))
        if (spans_overlap(b.span, orb.span)) an.f1_orbitals.push_back(b);

    if (an.f1_orbitals.empty())
        throw DomainError("analyze_orbital: no f1-orbitals meet " + orb.span.str());
    for (const Orbital& b : an.f1_orbitals) {
        if (b.span == orb.span)
            throw DomainError("analyze_orbital: " + orb.span.str() +
                              " is a common orbital; the analysis does not apply");
        if (b.span.lo < a || c < b.span.hi)
            throw DomainError("analyze_orbital: f1-orbital " + b.span.str() +
                              " is not contained in " + orb.span.str());
    }

    const Interval first = an.f1_orbitals.front().span;
    const Interval last = an.f1_orbitals.back().span;

    an.p_or_rho = agreement_bound(f0, f1, c, Anchor::FromRight);
    an.r = coincidence_points(f0, f1, Interval{a, c}).min_point();

    an.conditions.i = a < first.lo;
    an.conditions.ii = an.p_or_rho.has_value();
    an.conditions.iii = last.hi == c;
    an.conditions.iv = an.p_or_rho && evaluate(f0, last.lo) >= *an.p_or_rho;
    an.conditions.v = evaluate(f0, first.lo) > last.lo;

    an.nice = an.conditions.all() && evaluate(f0, first.lo) >= *an.p_or_rho;

    an.categories.assign(an.f1_orbitals.size(), Category::Uncategorized);
    if (an.p_or_rho && an.r) {
        // Category windows pull the coincidence data back through f0; an
        // orbital whose closure meets a window boundary stays uncategorized.
        const Rational p_pre = evaluate_inverse(f0, *an.p_or_rho);
        const Rational r_pre = evaluate_inverse(f0, *an.r);
        const size_t n = an.f1_orbitals.size();
        for (size_t i = 0; i < n; ++i) {
            const Interval& s = an.f1_orbitals[i].span;
            if (i == n - 1 && s.hi == c)
                an.categories[i] = Category::Main;
            else if (r_pre < s.lo && s.hi < p_pre)
                an.categories[i] = Category::Outside;
            else if (p_pre < s.lo && s.hi < last.lo)
                an.categories[i] = Category::Inside;
        }
    }
    return an;
}

std::string first_failed(const Conditions& c) {
    if (!c.i) return "i";
    if (!c.ii) return "ii";
    if (!c.iii) return "iii";
    if (!c.iv) return "iv";
    return "v";
}

} // namespace

OrbitalAnalysis analyze_orbital(const PLMap& f0, const PLMap& f1,
                                const Orbital& orb) {
    bool known = false;
    for (const Orbital& o : orbitals_of(f0))
        if (o == orb) { known = true; break; }
    if (!known)
        throw DomainError("analyze_orbital: " + orb.span.str() +
                          " is not an orbital of f0");

    if (orb.sign == Sign::Up) return analyze_up(f0, f1, orb);

    // Down-bumps reduce to up-bumps of the mirrored pair; the conditions
    // correspond index for index and categories carry over unchanged.
    OrbitalAnalysis m = analyze_up(mirrored(f0), mirrored(f1), mirrored(orb));
    OrbitalAnalysis an;
    an.orbital = orb;
    const size_t n = m.f1_orbitals.size();
    an.f1_orbitals.resize(n);
    an.categories.assign(n, Category::Uncategorized);
    for (size_t i = 0; i < n; ++i) {
        an.f1_orbitals[i] = mirrored(m.f1_orbitals[n - 1 - i]);
        an.categories[i] = m.categories[n - 1 - i];
    }
    if (m.p_or_rho) an.p_or_rho = Rational(1) - *m.p_or_rho;
    if (m.r) an.r = Rational(1) - *m.r;
    an.conditions = m.conditions;
    an.nice = m.nice;
    return an;
}

NestingReport nesting_check(const PLMap& f0, const PLMap& f1) {
    const auto o1 = orbitals_of(f1);
    for (const Orbital& A : orbitals_of(f0))
        for (const Orbital& B : o1) {
            if (!spans_overlap(A.span, B.span)) continue;
            const bool b_in_a = A.span.lo <= B.span.lo && B.span.hi <= A.span.hi;
            const bool a_in_b = B.span.lo <= A.span.lo && A.span.hi <= B.span.hi;
            if (!b_in_a && !a_in_b) return {false, std::make_pair(A, B)};
        }
    return {};
}

SharedOrbitalReport shared_orbital_commute_check(const PLMap& f0, const PLMap& f1) {
    const auto o1 = orbitals_of(f1);
    const PLMap com = commutator(f0, f1);
    for (const Orbital& A : orbitals_of(f0))
        for (const Orbital& B : o1)
            if (A.span == B.span && !is_identity_on(com, A.span))
                return {false, A.span};
    return {};
}

Verdict decide_structural(const PLMap& f0, const PLMap& f1) {
    Verdict v;
    v.decision = Decision::Indeterminate;

    if (is_identity(commutator(f0, f1))) {
        v.decision = Decision::NotStandard;
        v.reason = "f0 and f1 commute";
        return v;
    }

    const NestingReport nest = nesting_check(f0, f1);
    if (!nest.ok) {
        v.decision = Decision::NotStandard;
        v.reason = "f0-orbital " + nest.straddle->first.span.str() +
                   " and f1-orbital " + nest.straddle->second.span.str() +
                   " overlap without nesting";
        return v;
    }

    const SharedOrbitalReport shared = shared_orbital_commute_check(f0, f1);
    if (!shared.ok) {
        v.decision = Decision::NotStandard;
        v.reason = "f0 and f1 do not commute on their common orbital " +
                   shared.violation->str();
        return v;
    }

    const auto f0orbs = orbitals_of(f0);
    const auto f1orbs = orbitals_of(f1);
    v.roles.assign(f0orbs.size(), OrbitalRole::Disjoint);

    for (size_t idx = 0; idx < f0orbs.size(); ++idx) {
        const Orbital& A = f0orbs[idx];
        bool meets = false, common = false, engulfed = false;
        for (const Orbital& B : f1orbs) {
            if (!spans_overlap(A.span, B.span)) continue;
            meets = true;
            if (B.span == A.span) common = true;
            else if (B.span.lo <= A.span.lo && A.span.hi <= B.span.hi) engulfed = true;
        }
        if (!meets) continue;
        if (common) {
            v.roles[idx] = OrbitalRole::Common;
            continue;
        }
        if (engulfed) {
            v.decision = Decision::NotStandard;
            v.reason = "an f1-orbital strictly contains the f0-orbital " + A.span.str();
            return v;
        }
        v.roles[idx] = OrbitalRole::Analyzed;
        OrbitalAnalysis an = analyze_orbital(f0, f1, A);
        const bool ok = an.conditions.all();
        const std::string why = ok ? "" : first_failed(an.conditions);
        v.analyses.emplace_back(idx, std::move(an));
        if (!ok) {
            v.decision = Decision::NotStandard;
            v.reason = "condition " + why + " fails on orbital " + A.span.str();
            return v;
        }
    }

    // A failed outside commutation test is decisive on its own, so these run
    // before any uncategorized orbital can force an indeterminate verdict.
    const PLMap u = compose(f0, invert(f1));
    const PLMap cj = conjugate(f1, f0);
    bool any_uncategorized = false;
    for (const auto& [idx, an] : v.analyses) {
        (void)idx;
        for (size_t j = 0; j < an.f1_orbitals.size(); ++j) {
            if (an.categories[j] == Category::Uncategorized) {
                any_uncategorized = true;
                continue;
            }
            if (an.categories[j] != Category::Outside) continue;
            const Interval& B = an.f1_orbitals[j].span;
            const Interval P{evaluate(f0, B.lo), evaluate(f0, B.hi)};
            if (!is_identity(commutator(u, restrict_to(cj, P)))) {
                v.decision = Decision::NotStandard;
                v.reason = "restriction of f1^f0 to " + P.str() +
                           " fails to commute with f0 f1^-1 (outside orbital " +
                           B.str() + ")";
                return v;
            }
        }
    }

    if (any_uncategorized) {
        v.decision = Decision::Indeterminate;
        v.reason = "an f1-orbital meets a category window boundary";
        return v;
    }

    v.decision = Decision::Standard;
    v.reason = "all f1-orbitals are main, inside, or commuting outside orbitals";
    return v;
}

bool decide_oracle(const PLMap& f0, const PLMap& f1) {
    return check_standard_relations(f0, f1).standard();
}

UbiquityWitness ubiquity_witness(const PLMap& f0, const PLMap& f1) {
    if (!decide_oracle(f0, f1))
        throw DomainError("ubiquity_witness: pair fails the relation check");

    const std::vector<std::pair<std::string, PLMap>> candidates = {
        {"f0", f0},
        {"f1", f1},
        {"f0 f1^-1", compose(f0, invert(f1))},
        {"f1^f0", conjugate(f1, f0)},
    };

    for (const Interval& W : subgroup_support({f0, f1})) {
        for (const auto& [name, h] : candidates) {
            bool lo = false, hi = false, any = false;
            for (const Orbital& o : orbitals_of(h)) {
                if (!spans_overlap(o.span, W)) continue;
                any = true;
                if (o.span.lo == W.lo) lo = true;
                if (o.span.hi == W.hi) hi = true;
            }
            if (any && lo != hi)
                return {W, name, h, lo ? End::NearLo : End::NearHi};
        }
    }
    throw DomainError("ubiquity_witness: no candidate approaches exactly one end");
}

} // namespace plf
