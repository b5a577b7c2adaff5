#pragma once

#include "plf/classify.hpp"
#include "plf/orbitals.hpp"
#include "plf/plmap.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plf {

// One orbital of f0 on which the partner map should follow the canonical
// nice shape: identity up to p f0^-1 (rho f0^-1 reflected for down-bumps),
// a bridge across the middle, and f0 beyond p. Bridge vertices are optional
// interior points of the bridge box; empty means a single segment.
struct OrbitalChoice {
    size_t orbital = 0;
    Rational p;
    std::vector<Point> filler;
};

// An orbital left alone: the partner is f0^power there (0 = identity).
struct CommutingChoice {
    size_t orbital = 0;
    long power = 0;
};

struct NicePairSpec {
    PLMap f0;
    std::vector<OrbitalChoice> choices;
    std::vector<CommutingChoice> commuting;
};

// Builds (f0, f1) from the spec and verifies the result: the structural
// decision must come out Standard, with every chosen orbital nice and free
// of outside orbitals.
std::pair<PLMap, PLMap> build_nice_pair(const NicePairSpec& spec);

enum class StepCase { FirstOrbital, FirstGap, CommonRoot };

const char* step_case_str(StepCase c);
StepCase step_case_from(const std::string& s);

// Replaces f1 by h^t f0^-1 h^k f0 f1 (word order) on one orbital of f0.
// When s is present the support of h must fit in (p f0^-1, s f0^-1);
// otherwise any support from p f0^-1 up to the orbital's far end is allowed.
struct PerturbationStep {
    size_t orbital = 0;
    PLMap h;
    long t = 0;
    long k = 0;
    StepCase kase = StepCase::FirstOrbital;
    std::optional<Rational> s;
};

PLMap perturb(const PLMap& f0, const PLMap& f1, const PerturbationStep& step);

// Work queue diagnostics for one orbital of a decomposition.
struct OrbitalWork {
    size_t orbital = 0;
    Rational alpha;
    std::vector<Interval> work_set;
};

struct DecompositionTrace {
    PLMap nice_f1;
    std::vector<PerturbationStep> steps;
    std::vector<OrbitalWork> work;
};

// Factors a standard pair (f0, g1) as a chain of perturbation steps applied
// to a nice pair (f0, nice_f1). Requires the relation check to pass.
DecompositionTrace decompose(const PLMap& f0, const PLMap& g1);

// Applies the steps in order starting from nice_f1.
PLMap replay(const PLMap& f0, const PLMap& nice_f1,
             const std::vector<PerturbationStep>& steps);

struct RootCertificate {
    PLMap root;
    long exp_g = 0;
    long exp_h = 0;
};

// For g, h supported on a shared orbital with commuting restrictions, finds
// psi with psi^exp_g = g and psi^exp_h = h, verified exactly. Throws
// IncommensurableError when the leading slopes admit no common power.
RootCertificate common_root(const PLMap& g, const PLMap& h, const Interval& orb);

} // namespace plf
