#pragma once

#include "plf/construct.hpp"
#include "plf/words.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace plf {

enum class PairMode {
    Nice,
    PerturbChain,
    OutsideFamily,
    Commuting,
    MutantI,
    MutantII,
    MutantIV,
    MutantV,
    MutantNudge,
};

const char* pair_mode_str(PairMode m);

struct GeneratedPair {
    PLMap f0, f1;
    // Ground truth: by construction for the positive families, recorded from
    // the relation check for the mutated ones.
    bool expected = false;
    PairMode mode = PairMode::Nice;
    bool mirrored_pair = false;
};

// Deterministic in seed and mode. Breakpoint denominators stay at or below
// 2^20 and vertex counts at or below 32.
GeneratedPair random_pair(uint64_t seed, PairMode mode);

// Mixed corpus cycling through all modes with per-entry derived seeds.
std::vector<GeneratedPair> build_corpus(size_t count, uint64_t base_seed);

// Bounded deterministic draws (modulo reduction; uniformity is not needed).
uint64_t draw(std::mt19937_64& rng, uint64_t n);
long draw_int(std::mt19937_64& rng, long lo, long hi);

GenWord random_word(std::mt19937_64& rng, int max_index, int max_letters,
                    long max_exp);

} // namespace plf
