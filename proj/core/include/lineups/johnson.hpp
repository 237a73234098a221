#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lineups/combinatorics.hpp"

namespace lineups {

/// The Johnson graph J(n, k) on k-subsets of an n-set, with edges between
/// subsets sharing k-1 elements. Its k+1 eigenspaces are the effect spaces
/// V_0 (mean), V_1 (individuals), ..., V_k (full lineups): the orthogonal
/// decomposition every lineup-indexed vector splits into.
///
/// Immutable after construction; safe to share across threads.
struct JohnsonSpace {
  int n = 0;
  int k = 0;
  long long num_lineups = 0;  // C(n, k)
  int degree = 0;             // k * (n - k); J(n, k) is regular

  /// eigenvalues[j] = (k - j)(n - k - j) - j, strictly decreasing in j.
  std::vector<double> eigenvalues;

  /// dims[j] = C(n, j) - C(n, j - 1); dims[0] = 1; sums to C(n, k).
  std::vector<long long> dims;

  /// Flattened neighbor lists (num_lineups x degree) when small enough to
  /// cache; empty means adjacency_apply enumerates neighbors on the fly.
  std::vector<std::int32_t> neighbor_table;
};

/// Requires 1 <= k <= n - k, the regime where all k+1 eigenvalues are
/// distinct and the order spaces are unambiguous.
JohnsonSpace make_space(int n, int k);

/// lambda_j for the order-j effect space, 0 <= j <= k.
double eigenvalue_of_order(const JohnsonSpace& space, int j);

/// out[L] = sum of v[L'] over lineups L' with |L ∩ L'| = k - 1.
/// Never materializes a dense matrix.
std::vector<double> adjacency_apply(const JohnsonSpace& space,
                                    std::span<const double> v);

/// P_j v where P_j is the orthogonal projector onto the order-j eigenspace,
/// evaluated as the Lagrange product Π_{i≠j} (A - λ_i I)/(λ_j - λ_i):
/// k adjacency applications, no eigenbasis.
std::vector<double> project_onto_order(const JohnsonSpace& space,
                                       std::span<const double> v, int j);

/// The full orthogonal decomposition f = f_0 + f_1 + ... + f_k.
struct SpectralDecomposition {
  int n = 0;
  int k = 0;
  std::vector<std::vector<double>> components;  // k+1 vectors of length C(n,k)

  /// Sum of the components; equals the decomposed input up to tolerance.
  std::vector<double> reconstruct() const;
};

SpectralDecomposition decompose(const JohnsonSpace& space,
                                std::span<const double> v);

}  // namespace lineups
