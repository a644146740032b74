#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace symfield {

// Cycle data of a permutation of N points: points_on[i] is the number of
// POINTS lying on cycles of length i (so i divides points_on[i] and the
// values sum to N). This is the lambda_sigma(i) profile used throughout.
struct CycleType {
    long long N = 0;
    std::map<int, long long> points_on;

    // Check the divisibility and total-mass constraints; throws
    // validation_error on failure.
    void validate() const;

    // lambda_sigma(i): points on i-cycles, 0 when absent.
    long long lam(int i) const;

    // Points moved: N - lam(1).
    long long moved() const;

    bool operator==(const CycleType&) const = default;
};

// Cycle type of a permutation given as 0-indexed images.
CycleType cycle_type_of(std::span<const int> perm);

// A nontrivial conjugacy class of the symmetric group on N points, given by
// the points on cycles of each length >= 2; the number of fixed points is
// implied. JSON form: {"N": 100, "cycles": {"2": 2}}.
struct FiniteClass {
    long long N = 0;
    std::map<int, long long> cycles;  // length >= 2 -> points on such cycles

    void validate() const;  // throws validation_error

    long long moved() const;
    long long fixed() const { return N - moved(); }
    long long lam(int i) const;      // includes the implied i = 1 entry
    CycleType type() const;
};

// Large-N class data: alpha is the limit of (moved points)/N, and
// lambda(i) for i >= 2 is the limit of (points on i-cycles)/(moved points).
// The class is evanescent when alpha = 0 and macroscopic otherwise.
// JSON form: {"alpha": 0.0, "lambda": {"2": 1.0}}.
struct LimitClass {
    double alpha = 0.0;
    std::map<int, double> lambda;
    int truncation = 0;  // optional cap on series support, 0 = none

    void validate() const;  // throws validation_error

    bool evanescent() const { return alpha == 0.0; }
    double lam(int i) const;  // lambda(i) for i >= 2, 0 when absent
    double lambda_sum() const;
    int max_cycle() const;  // largest i with lambda(i) > 0, 1 if none
};

// Transposition limit class: lambda(2) = 1, alpha = 0.
LimitClass transposition_limit();

// Smallest finite class with bounded support whose moved-point proportions
// realize the limit profile exactly: points on i-cycles = m * lambda(i) for
// the least m <= 10000 making every entry an integer multiple of i. Requires
// an evanescent class with weights summing to 1; throws validation_error
// when no exact realization exists.
FiniteClass realize_finite_class(const LimitClass& lc, long long N);

// Transposition class at finite N: lambda_N(2) = 2, one 2-cycle.
FiniteClass transposition_class(long long N);

// Monte Carlo summary of one scalar observable.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    double variance = 0.0;  // unbiased sample variance
    long long samples = 0;
};

// Estimate from a buffer of per-replica values (pairwise aggregation, so
// the result depends only on the buffer contents, not on thread count).
Estimate make_estimate(std::span<const double> values);

}  // namespace symfield
