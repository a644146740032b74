#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace symfield {

// Set partition of {1..k, 1'..k'}. Unprimed (top) labels are stored as
// +i, primed (bottom) labels as -i. Canonical form: inside each block the
// labels are sorted with +i before -i and smaller |i| first, and blocks are
// sorted by their leading label in the same order. All operations return
// canonical partitions, so operator== is structural equality.
class Partition {
public:
    Partition() = default;

    // Takes ownership of raw blocks over {+-1..+-k} and canonicalizes.
    // Throws validation_error unless the blocks partition exactly that set.
    Partition(int k, std::vector<std::vector<int>> blocks);

    int k() const { return k_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

    // Block index containing the given label, -1 if absent.
    int block_of(int label) const;

    std::string to_string() const;

private:
    int k_ = 0;
    std::vector<std::vector<int>> blocks_;
};

std::ostream& operator<<(std::ostream&, const Partition&);

// --- constructors ---------------------------------------------------------

// Identity: blocks {i, i'} for i = 1..k.
Partition identity_partition(int k);

// Single block containing all of {1..k, 1'..k'}.
Partition full_partition(int k);

// Diagram of a permutation: blocks {i, sigma(i)'}. images is 1-indexed
// through its values: images[i-1] = sigma(i) in 1..k.
Partition perm_partition(const std::vector<int>& images);

// Diagram of the k-cycle (1 2 ... k).
Partition cycle_partition(int k);

// --- enumeration ----------------------------------------------------------

enum class DiagramKind { All, Permutations, Irreducible };

// All partitions of the given kind in canonical order. Hard caps: k <= 4
// for All and Irreducible (Bell(8) = 4140 at k = 4), k <= 8 for
// Permutations. Throws capacity_error beyond the cap.
std::vector<Partition> enumerate_partitions(int k, DiagramKind kind);

// --- lattice and diagram operations ----------------------------------------

// true iff every block of p is contained in a block of q.
bool finer(const Partition& p, const Partition& q);

// Least common coarsening.
Partition join(const Partition& p, const Partition& q);

// Swap +i <-> -i in every block.
Partition transpose(const Partition& p);

// Number of blocks of p v id: the "cycles" of the diagram.
int num_cycles(const Partition& p);

// Irreducible: p v id has a single block.
bool irreducible(const Partition& p);

// Stack q above p, gluing q's bottom row to p's top row. Returns the
// resulting diagram together with the number kappa of components that were
// swallowed in the middle. For permutation diagrams this is composition of
// permutations with kappa = 0.
struct Composition {
    Partition diagram;
    int kappa = 0;
};
Composition compose(const Partition& p, const Partition& q);

// Doubled distance: nb(p) + nb(q) - 2 nb(p v q). Integral by construction;
// the true distance is half of this.
int distance2(const Partition& p, const Partition& q);

// True (half-integer) distance as a double.
double distance(const Partition& p, const Partition& q);

// true iff s lies on a geodesic from the identity diagram to s0.
bool geodesic_leq(const Partition& s, const Partition& s0);

// Restriction of p to the columns in cols (1-based, strictly increasing),
// relabeled to 1..|cols|. Keeps both +i and -i of every selected column;
// blocks that lose all their labels are dropped.
Partition extract_columns(const Partition& p, const std::vector<int>& cols);

// --- parure classification --------------------------------------------------

enum class ParureKind { Necklace, Chain, MixedParure, NotParure };

struct ParureClass {
    ParureKind kind = ParureKind::NotParure;
    int true_length = 0;  // total over cycles for MixedParure
};

// Classify an irreducible diagram as a necklace or chain, or classify a
// reducible one cycle by cycle (MixedParure when every cycle is a parure).
ParureClass classify_parure(const Partition& p);

// --- ears -------------------------------------------------------------------

// Ear columns: i such that +i and -i share a block. head is the restriction
// to the non-ear columns (empty partition when every column is an ear).
struct EarsHead {
    std::vector<int> ears;  // 1-based column indices, increasing
    Partition head;         // over k - |ears| columns
};
EarsHead ears_and_head(const Partition& p);

// --- refinement compatible with the cycle structure --------------------------

// true iff q is finer than p (q = p allowed) with nb(q) - nb(q v id)
// equal to nb(p) - nb(p v id).
bool finer_compatible(const Partition& q, const Partition& p);

}  // namespace symfield
