#pragma once

#include "plf/orbitals.hpp"
#include "plf/plmap.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plf {

enum class Category { Main, Inside, Outside, Uncategorized };

const char* category_str(Category c);

struct Conditions {
    bool i = false, ii = false, iii = false, iv = false, v = false;

    bool all() const { return i && ii && iii && iv && v; }
};

// Per-orbital structural analysis of an f0-orbital against f1's orbitals.
// For a down-bump the whole analysis is computed on the mirrored pair and
// reflected back, so p_or_rho is p for up-bumps and rho for down-bumps, and
// r is the minimal (up) or maximal (down) coincidence point.
struct OrbitalAnalysis {
    Orbital orbital;
    std::vector<Orbital> f1_orbitals;
    std::optional<Rational> p_or_rho;
    std::optional<Rational> r;
    Conditions conditions;
    std::vector<Category> categories;
    bool nice = false;

    bool has_outside() const;
    bool has_uncategorized() const;
};

OrbitalAnalysis analyze_orbital(const PLMap& f0, const PLMap& f1,
                                const Orbital& orb);

struct NestingReport {
    bool ok = true;
    // A straddling pair (orbital of f0, orbital of f1) when !ok.
    std::optional<std::pair<Orbital, Orbital>> straddle;
};

// Every overlapping pair of orbitals must be nested one way or the other.
NestingReport nesting_check(const PLMap& f0, const PLMap& f1);

struct SharedOrbitalReport {
    bool ok = true;
    std::optional<Interval> violation;
};

// On every common orbital (equal endpoints) f0 and f1 must commute.
SharedOrbitalReport shared_orbital_commute_check(const PLMap& f0, const PLMap& f1);

enum class Decision { Standard, NotStandard, Indeterminate };

const char* decision_str(Decision d);

// How an f0-orbital was handled by decide_structural.
enum class OrbitalRole { Disjoint, Common, Analyzed };

struct Verdict {
    Decision decision;
    std::string reason;
    // Analyses for orbitals with role Analyzed, in orbital order.
    std::vector<std::pair<size_t, OrbitalAnalysis>> analyses;
    std::vector<OrbitalRole> roles;
};

// The structural decision procedure. NotStandard verdicts are certified by
// a failed necessary condition; Standard requires every f1-orbital to be
// categorized and every outside restriction to commute with f0 f1^-1.
Verdict decide_structural(const PLMap& f0, const PLMap& f1);

// Ground truth: both defining relations hold and the pair does not commute.
bool decide_oracle(const PLMap& f0, const PLMap& f1);

enum class End { NearLo, NearHi };

struct UbiquityWitness {
    Interval window;
    std::string element;
    PLMap element_map;
    End end;
};

// An orbital W of <f0,f1> and an element from {f0, f1, f0 f1^-1, f1^f0}
// whose support inside W touches exactly one endpoint of W.
UbiquityWitness ubiquity_witness(const PLMap& f0, const PLMap& f1);

} // namespace plf
