#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "symfield/classes.hpp"
#include "symfield/partition.hpp"

namespace symfield {

// Dense N^k x N^k tensors and partition-indexed observables. Everything
// here is exact linear algebra at small N, used to pin down the Monte Carlo
// and limit routes; capacities are deliberately tight.

// --- matricization ----------------------------------------------------------

// 0/1 matrix of a diagram on (C^N)^{tensor k}, flattened so that the row
// index is the bottom tuple (i_1', ..., i_k') in base N and the column index
// the top tuple. An entry is 1 iff the joint index assignment is constant on
// every block of p (inclusive) or has level set family exactly p (exclusive).
// Returned sparsely as (row, col) pairs, sorted. Capacity: N^k <= 1 << 20.
std::vector<std::pair<std::int64_t, std::int64_t>> diagram_matrix(const Partition& p, int N,
                                                                  bool exclusive);

// Dense variant, capacity N^(2k) <= 1 << 24.
Eigen::MatrixXd diagram_matrix_dense(const Partition& p, int N, bool exclusive);

// --- moments ----------------------------------------------------------------

// Normalized diagram moment of k matrices of shape N x N: the sum over index
// assignments refining (inclusive) or with level sets equal to (exclusive)
// the transpose of p, of prod_l M_l[I(+l), I(-l)], divided by N^(number of
// cycles of p). Capacity: N^(blocks of p) <= 1e8.
double diagram_moment(const Partition& p, const std::vector<Eigen::MatrixXd>& mats,
                      bool exclusive);

// Exact exclusive moment of sigma^{tensor k} for a permutation with the given
// cycle data, by Moebius inversion over coarsenings; costs nothing in N.
double perm_exclusive_moment(const Partition& p, const CycleType& ct);

// Inclusive counterpart.
double perm_inclusive_moment(const Partition& p, const CycleType& ct);

// --- walk generator and expectation ----------------------------------------

// Permutation matrix of sigma (0-indexed images): entry (i, j) = 1 iff
// i = sigma(j).
Eigen::MatrixXd perm_matrix(const std::vector<int>& perm);

// k-fold tensor power of the matrix of sigma, shape N^k x N^k, indexed
// consistently with diagram_matrix.
Eigen::MatrixXd perm_tensor_power(const std::vector<int>& perm, int k);

// All elements of the class as 0-indexed image vectors. Capacity: N <= 8.
std::vector<std::vector<int>> class_elements(const FiniteClass& c);

// Generator of the walk on the k-th tensor power: (N-1)/moved times
// (class average of sigma^{tensor k} minus the identity). Capacity:
// N^k <= 4096.
Eigen::MatrixXd class_generator(const FiniteClass& c, int k);

// E[S_t^{tensor k}] for the walk at time t, via the matrix exponential of
// t times the class generator. Same capacity as class_generator.
Eigen::MatrixXd walk_expectation_tensor(const FiniteClass& c, int k, double t);

// --- cumulant extraction ----------------------------------------------------

// Decompose a tensor T on (C^N)^{tensor k} over the inclusive diagram basis
// via the Gram matrix <rho(p), rho(q)> = N^(blocks of p v q), then rescale
// so that coordinates converge in the large-N limit: the returned value for
// p is x_p * N^(blocks(p) - cycles(p)). Requires N >= 2k and k <= 3.
struct DiagramCumulants {
    std::vector<Partition> basis;  // enumerate_partitions(k, All) order
    std::vector<double> value;     // one per basis element
    double value_of(const Partition& p) const;
};
DiagramCumulants extract_cumulants(const Eigen::MatrixXd& T, int N, int k);

}  // namespace symfield
