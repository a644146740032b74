#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "symfield/master.hpp"
#include "symfield/walk.hpp"

namespace symfield {

// Branched coverings of the disk: a Poisson cloud of simple branch points,
// each carrying a uniform transposition, and the monodromy of a loop as the
// ordered product of the transpositions it encloses. The point count over a
// region of area a is Poisson with mean N a / 2, which matches the walk run
// to time a N / (N-1).

struct CoverPoint {
    double x = 0.0, y = 0.0;  // NaN in face mode, where geometry is abstract
    int a = 0, b = 0;         // the transposition (a b), 0-indexed, a != b
};

struct CoveringSample {
    long long N = 0;
    std::vector<CoverPoint> points;  // in sampled order
    std::map<std::string, std::vector<int>> face_points;  // face -> indices
    bool has_positions = false;
};

// Whole unit disk with geometric positions.
struct DiskRegion {};

// Abstract faces with given areas; points carry no positions.
struct FaceRegion {
    std::map<std::string, double> areas;
};

CoveringSample sample_covering(long long N, const DiskRegion& region, std::mt19937_64& rng);
CoveringSample sample_covering(long long N, const FaceRegion& region, std::mt19937_64& rng);

// Simple polygon with vertices inside the unit disk.
struct Polygon {
    std::vector<std::pair<double, double>> vertices;

    void validate() const;  // throws validation_error

    // +1 strictly inside (nonzero winding), -1 strictly outside, 0 on the
    // boundary up to floating-point slack.
    int side(double x, double y) const;
};

// A loop is given either as a drawn polygon over the disk cloud or as a
// face word over abstract faces.
using LoopGeometry = std::variant<Polygon, LassoWord>;

// Redraw the position of any point that lands on the polygon boundary (a
// probability-zero event kept finite by floating point).
void redraw_boundary_points(CoveringSample& s, const Polygon& poly, std::mt19937_64& rng);

// Monodromy of the polygon loop: product of the transpositions strictly
// inside, in sampled order. Throws numeric_error if a point sits on the
// boundary; redraw_boundary_points clears that.
std::vector<int> monodromy(const Polygon& poly, const CoveringSample& s);

// Monodromy of a face word: per-face products in sampled order, composed
// right to left with the word's exponents.
std::vector<int> monodromy(const LassoWord& word, const CoveringSample& s);

// Wilson statistics of the loop over many covering samples.
struct WilsonStats {
    Estimate fixed_fraction;
    Estimate normalized_distance;
    Estimate distance_squared;
    std::vector<Estimate> cycle_moment;  // n = 1..n_max
    double mean_points = 0.0;
};
WilsonStats wilson_statistics(const LoopGeometry& loop, long long N, long long samples,
                              int n_max, std::uint64_t seed, int workers);

// Per-replica values of one monodromy observable, for distribution tests.
std::vector<double> monodromy_samples(const LoopGeometry& loop, long long N,
                                      long long samples, ObservableSel sel,
                                      std::uint64_t seed, int workers);

}  // namespace symfield
