#pragma once

#include <map>
#include <vector>

#include "symfield/classes.hpp"
#include "symfield/partition.hpp"

namespace symfield {

// Exact large-N limits of the walk: exclusive cycle moments, the spectral
// measure with its phase transition, the distance profile, the moment ODE
// hierarchy at macroscopic classes, and diagram log-cumulants.

// m_{n-cycle}(t) for n = 1..n_max (evanescent classes only). Computed in
// log space with streaming max-shift accumulation, so deep tails come out
// at full relative precision instead of underflowing to zero.
std::vector<double> mnc_table(const LimitClass& lc, double t, int n_max);

// Single entry of the table; classes supported on one cycle length take a
// closed-form path.
double mnc(int n, double t, const LimitClass& lc);

// Critical time of the atomic/continuous transition: 1 / sum_j (j-1)
// lambda(j) when the weights sum to 1, otherwise 0 (some mass escapes at
// every positive time).
double critical_time(const LimitClass& lc);

// Total atomic mass sum_n m_{n-cycle}(t) via the fixed point of
// z exp(-t (LS(z) - 1)): exactly 1 at or below the critical time, the
// smallest root in (0, 1) above it.
double atomic_mass(double t, const LimitClass& lc);

// The same mass summed term by term, with a certified error bound: a
// geometric tail bound away from the critical time, Richardson extrapolation
// in K (which cancels the K^{-1/2} tail) at it. Throws numeric_error when
// the requested tolerance cannot be certified within capacity.
struct SeriesMass {
    double value = 0.0;
    long long terms = 0;
    double tail_bound = 0.0;
};
SeriesMass atomic_mass_series(double t, const LimitClass& lc, double tol);

// Limit spectral measure of the walk at time t: atoms of total mass
// m_{n-cycle}(t)/n at each n-th root of unity plus a uniform part. The
// returned masses are exact up to an atomic tail below tol, which is folded
// into the uniform weight so the total is exactly 1.
struct SpectralMeasure {
    double t = 0.0;
    std::map<int, double> atom;  // n -> total mass over the n-th roots of unity
    double lebesgue_weight = 0.0;
};
SpectralMeasure spectral_measure(double t, const LimitClass& lc, int n_max, double tol);

// int z^n dmu, evaluated by explicit summation over the atom roots of unity
// (the imaginary part cancels; the real part is returned).
double measure_moment(const SpectralMeasure& m, int n);

// Normalized-distance limit 1 - sum_k m_{k-cycle}(t)/k, with the tail
// controlled through the residual atomic mass.
double mean_distance(double t, const LimitClass& lc, double tol);

// Exclusive moments of the walk at a macroscopic class, one coupled linear
// ODE system per level, integrated with adaptive Runge-Kutta (Dormand-
// Prince 4/5). Moments are class functions, so each level is indexed by
// integer partitions (decreasing cycle types counting all points, fixed
// points included). Capacity: k_max <= 8.
struct OdeResult {
    double t = 0.0;
    int k_max = 0;
    // level[j-1]: cycle type of j points -> exclusive moment value
    std::vector<std::map<std::vector<int>, double>> level;
};
OdeResult ode_evolve(const LimitClass& lc, int k_max, double t, double tol = 1e-10);

// Lookup with normalization of the cycle type (sorted decreasingly).
double ode_moment(const OdeResult& r, std::vector<int> cycle_type);

// Large-N limit of the normalized trace of the class generator against the
// diagram p, which must be irreducible: 0 unless p is a parure, -1 for the
// length-1 necklace, lambda(s) for longer necklaces, 1 - sum_{2<=i<=s}
// lambda(i) for chains of true length s.
double generator_limit(const Partition& p, const LimitClass& lc);

// Limit log-cumulant of the walk at time 1 (evanescent classes): nonzero
// only on diagrams that are an irreducible core times identity columns.
double log_cumulant(const Partition& p, const LimitClass& lc);

// All integer partitions of n, decreasing, in a deterministic order.
std::vector<std::vector<int>> integer_partitions(int n);

}  // namespace symfield
