#pragma once

#include "plf/plmap.hpp"

#include <vector>

namespace plf {

// Maximal open intervals of non-fixed points, sorted, each signed.
std::vector<Orbital> orbitals_of(const PLMap& f);

// Connected components of the pointwise union of the generators' supports.
// Two components merge only where the union actually covers the junction.
std::vector<Interval> subgroup_support(const std::vector<PLMap>& gens);

// Leading and trailing slopes of f on one of its orbitals.
std::pair<Rational, Rational> boundary_slopes(const PLMap& f, const Orbital& orb);

// (lo h, hi h) with the same sign: the orbital of f^h matching orb of f.
Orbital corresponding_orbital(const Orbital& orb, const PLMap& h);

// Process-wide cap on iteration counts, 10000 unless overridden (the CLI
// honors the PLF_ITER_CAP environment variable through this).
long default_iter_cap();
void set_default_iter_cap(long cap);

// x f^n, guarded by an iteration cap on |n|; cap 0 means the process default.
Rational iterate_toward_end(const PLMap& f, const Rational& x, long n,
                            long cap = 0);

} // namespace plf
