#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "symfield/classes.hpp"

namespace symfield {

// Wilson loop observables for independent walks attached to the faces of a
// planar loop. A word lists the faces crossed with winding exponents; the
// loop variable is the product of the face elements read right to left, and
// the observable is its normalized trace (fixed-point fraction).

struct Letter {
    std::string face;
    int exponent = 1;  // +1 or -1
};

struct LassoWord {
    std::map<std::string, double> areas;  // face -> area (walk time)
    std::vector<Letter> word;
    LimitClass cls = transposition_limit();  // class driving every face walk

    void validate() const;  // throws validation_error
};

// Exact limit value of the normalized trace, by structural reduction:
// cyclic cancellation of inverse pairs, power words on one face through the
// cycle moments, splitting off faces that appear once, and the alternating
// four-letter two-face pattern through the joint cumulants of one walk
// against an independent one. Words outside these rules throw
// not_reducible_error.
double analytic_eval(const LassoWord& w);

// Monte Carlo at finite N: each face runs an independent walk to time
// area * t_scale and the word is evaluated in the group. t_scale = 1 uses
// the areas as is; N/(N-1) matches the clock of the covering construction.
Estimate mc_wilson(const LassoWord& w, long long N, double t_scale, long long samples,
                   std::uint64_t seed, int workers);

// Per-replica normalized traces behind mc_wilson, for distribution tests.
std::vector<double> wilson_samples(const LassoWord& w, long long N, double t_scale,
                                   long long samples, std::uint64_t seed, int workers);

// Named example words that analytic_eval handles, including the five-letter
// composite loop with three faces. Each entry pairs a short name with the
// word.
std::vector<std::pair<std::string, LassoWord>> word_library();

}  // namespace symfield
