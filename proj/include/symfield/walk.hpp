#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "symfield/classes.hpp"

namespace symfield {

// Continuous-time random walk on the symmetric group: jumps arrive at rate
// (N-1)/moved(class) and each one left-multiplies the state by a uniform
// element of the class. With this clock E[fixed fraction] of S_t is exactly
// 1/N + (1 - 1/N) exp(-t) for every nontrivial class.

// Draws uniform class elements in O(moved) per draw. The drawn element is
// returned as its nontrivial cycles, concatenated into one buffer.
class ClassSampler {
public:
    explicit ClassSampler(const FiniteClass& c);

    // Points of the nontrivial cycles, valid until the next draw. Cycle j
    // occupies [spans()[j].first, spans()[j].first + spans()[j].second).
    const std::vector<int>& draw(std::mt19937_64& rng);
    const std::vector<std::pair<int, int>>& spans() const { return spans_; }

private:
    long long N_;
    std::vector<int> pool_;
    std::vector<int> out_;
    std::vector<std::pair<int, int>> spans_;
};

// Walk state with O(cycle support) jump application.
class Walker {
public:
    explicit Walker(const FiniteClass& c);

    // Run a fresh walk from the identity to time t; the number of jumps is
    // Poisson with mean t * (N-1) / moved.
    void run(double t, std::mt19937_64& rng);

    const std::vector<int>& perm() const { return cur_; }
    const std::vector<int>& inverse() const { return inv_; }
    long long jumps() const { return jumps_; }
    long long N() const { return cls_.N; }

private:
    FiniteClass cls_;
    ClassSampler sampler_;
    double rate_;
    std::vector<int> cur_, inv_;
    std::vector<int> scratch_;
    long long jumps_ = 0;
};

// Scalar observables of a permutation state.
struct WalkObservables {
    double fixed_fraction = 0.0;      // points fixed / N
    double normalized_distance = 0.0; // 1 - cycles / N
    double distance_squared = 0.0;    // 2 (1 - fixed_fraction)
    std::vector<double> cycle_moment; // [n-1] = n * (# n-cycles) / N
};
WalkObservables observables(std::span<const int> perm, int n_max);

enum class Observable { FixedFraction, NormalizedDistance, DistanceSquared, CycleMoment };
struct ObservableSel {
    Observable kind = Observable::FixedFraction;
    int n = 1;  // order for CycleMoment
};

// Per-replica values of one observable. workers = 1 runs the plain serial
// loop; workers > 1 distributes replicas over OpenMP threads; workers = 0
// uses the hardware count. Replica r always uses the generator
// replica_rng(seed, r), so the output is independent of workers.
std::vector<double> observable_samples(const FiniteClass& c, double t, long long samples,
                                       ObservableSel sel, std::uint64_t seed, int workers);

Estimate estimate_observable(const FiniteClass& c, double t, long long samples,
                             ObservableSel sel, std::uint64_t seed, int workers);

// All standard observables from one batch of walks.
struct WalkEstimates {
    Estimate fixed_fraction;
    Estimate normalized_distance;
    Estimate distance_squared;
    std::vector<Estimate> cycle_moment;  // n = 1..n_max
    double mean_jumps = 0.0;
};
WalkEstimates estimate_walk(const FiniteClass& c, double t, long long samples, int n_max,
                            std::uint64_t seed, int workers);

}  // namespace symfield
