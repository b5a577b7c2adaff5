#pragma once

#include "plf/plmap.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plf {

struct Letter {
    int index;
    long exponent;

    bool operator==(const Letter&) const = default;
};

// Freely reduced word in the generators x0, x1, x2, ...
struct GenWord {
    std::vector<Letter> letters;

    bool empty() const { return letters.empty(); }
    bool operator==(const GenWord&) const = default;
};

GenWord make_word(std::vector<Letter> letters);

// Grammar: whitespace-separated tokens `x<k>` or `x<k>^<int>`, k >= 0.
GenWord parse_word(const std::string& text);

std::string word_str(const GenWord& w);

const PLMap& x0();
const PLMap& x1();

// x_k of the infinite presentation; k >= 2 expands as x1 conjugated by x0^(k-1).
PLMap xk(int k);

PLMap eval_word(const GenWord& w);

// Dyadic breakpoints and power-of-two slopes throughout.
bool is_in_F(const PLMap& f);

// Slope 1 at both endpoints. Requires membership in F.
bool is_in_F_prime(const PLMap& f);

struct RelationReport {
    bool rel1, rel2, commuting;
    std::optional<Rational> rel1_witness, rel2_witness;

    bool standard() const { return rel1 && rel2 && !commuting; }
};

// rel1 = [f0 f1^-1, f1^f0] = 1, rel2 = [f0 f1^-1, f1^(f0^2)] = 1,
// commuting = [f0, f1] = 1; witnesses are least moved breakpoints of the
// failing commutators.
RelationReport check_standard_relations(const PLMap& f0, const PLMap& f1);

// The exponent n with h = x0^n on a one-sided neighborhood of the endpoint
// (FromLeft: near 0; FromRight: near 1); nullopt when no power matches.
std::optional<long> x0_germ_exponent(const PLMap& h, Anchor end);

} // namespace plf
