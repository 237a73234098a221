// Shared fixtures and independent oracles for the test suites. Everything
// here stays deliberately naive (bitmask enumeration, dense eigensolves) so
// it cannot share a bug with the library paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lineups/combinatorics.hpp"
#include "lineups/ingest.hpp"

namespace testing {

using PairValue = std::map<std::pair<int, int>, double>;

// A worked five-player, two-on-the-floor season small enough to check by
// hand. Values are keyed by 0-based player pairs.
inline const PairValue& toy_values() {
  static const PairValue values{
      {{0, 1}, 22.0}, {{0, 2}, 18.0}, {{0, 3}, 3.0},  {{0, 4}, 58.0},
      {{1, 2}, 93.0}, {{1, 3}, 35.0}, {{1, 4}, 26.0}, {{2, 3}, 84.0},
      {{2, 4}, 25.0}, {{3, 4}, 2.0},
  };
  return values;
}

// Hand-checked order-1 component of the toy season: one third of the summed
// centered player totals of the two on the floor.
inline const PairValue& toy_order1() {
  static const PairValue values{
      {{0, 1}, -5.27},  {{0, 2}, 9.40},   {{0, 3}, -22.60}, {{0, 4}, -26.93},
      {{1, 2}, 34.40},  {{1, 3}, 2.40},   {{1, 4}, -1.93},  {{2, 3}, 17.07},
      {{2, 4}, 12.73},  {{3, 4}, -19.27},
  };
  return values;
}

// Order-2 component: the residual after the mean and order-1 parts.
inline const PairValue& toy_order2() {
  static const PairValue values{
      {{0, 1}, -9.33},  {{0, 2}, -28.00}, {{0, 3}, -11.00}, {{0, 4}, 48.33},
      {{1, 2}, 22.00},  {{1, 3}, -4.00},  {{1, 4}, -8.67},  {{2, 3}, 30.33},
      {{2, 4}, -24.33}, {{3, 4}, -15.33},
  };
  return values;
}

constexpr double kToyMean = 36.6;

// Raw player totals of the toy season, players 0..4.
inline std::vector<double> toy_individual_pm() {
  return {101.0, 176.0, 220.0, 124.0, 111.0};
}

// Pure order-1 contributions per player (centered player totals).
inline std::vector<double> toy_individual_contribution() {
  return {-45.4, 29.6, 73.6, -22.4, -35.4};
}

inline std::vector<double> pair_map_to_vector(const PairValue& values, int n) {
  std::vector<double> v(static_cast<std::size_t>(lineups::binomial(n, 2)), 0.0);
  for (const auto& [pair, value] : values) {
    const lineups::Group g{pair.first, pair.second};
    v[static_cast<std::size_t>(lineups::rank_subset(g, n))] = value;
  }
  return v;
}

inline std::vector<double> toy_success_vector() {
  return pair_map_to_vector(toy_values(), 5);
}

// One stint per lineup realizing the toy values exactly:
// (v/1 - 0/1) * 1 = v.
inline std::vector<lineups::Stint> toy_stints() {
  std::vector<lineups::Stint> stints;
  for (const auto& [pair, value] : toy_values()) {
    lineups::Stint s;
    s.game_id = "G1";
    s.team_players = {"p" + std::to_string(pair.first + 1),
                      "p" + std::to_string(pair.second + 1)};
    s.opp_players = {"q1", "q2"};
    s.pts_for = static_cast<long long>(value);
    s.pts_against = 0;
    s.poss_for = 1;
    s.poss_against = 1;
    stints.push_back(std::move(s));
  }
  return stints;
}

inline std::vector<std::string> toy_roster() {
  return {"p1", "p2", "p3", "p4", "p5"};
}

// --- Independent oracles -------------------------------------------------

// All k-subsets of [0, n) in colexicographic order, enumerated by bitmask
// and sorted with a direct colex comparator (largest differing element
// decides).
inline std::vector<std::vector<int>> colex_enumerate(int n, int k) {
  std::vector<std::vector<int>> subsets;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> s;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) s.push_back(b);
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              for (std::size_t i = a.size(); i-- > 0;)
                if (a[i] != b[i]) return a[i] < b[i];
              return false;
            });
  return subsets;
}

// Dense Johnson adjacency built from pairwise intersection sizes.
inline Eigen::MatrixXd dense_adjacency(int n, int k) {
  const auto subsets = colex_enumerate(n, k);
  const auto size = static_cast<Eigen::Index>(subsets.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) {
      if (i == j) continue;
      std::vector<int> common;
      std::set_intersection(subsets[static_cast<std::size_t>(i)].begin(),
                            subsets[static_cast<std::size_t>(i)].end(),
                            subsets[static_cast<std::size_t>(j)].begin(),
                            subsets[static_cast<std::size_t>(j)].end(),
                            std::back_inserter(common));
      if (static_cast<int>(common.size()) == k - 1) a(i, j) = 1.0;
    }
  }
  return a;
}

struct DenseEigenOracle {
  std::vector<double> eigenvalues;         // distinct, descending
  std::vector<Eigen::MatrixXd> projectors; // one per distinct eigenvalue
};

// Eigendecomposition of the dense adjacency; eigenvalues clustered (they are
// integers) and ordered descending, so projectors[j] is the order-j space.
inline DenseEigenOracle dense_eigen_oracle(int n, int k) {
  const Eigen::MatrixXd a = dense_adjacency(n, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Eigen::MatrixXd& evecs = solver.eigenvectors();

  std::map<long long, Eigen::MatrixXd, std::greater<>> clusters;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    const long long rounded = std::llround(evals[i]);
    auto [it, inserted] = clusters.try_emplace(
        rounded, Eigen::MatrixXd::Zero(evals.size(), evals.size()));
    it->second += evecs.col(i) * evecs.col(i).transpose();
  }

  DenseEigenOracle oracle;
  for (const auto& [value, projector] : clusters) {
    oracle.eigenvalues.push_back(static_cast<double>(value));
    oracle.projectors.push_back(projector);
  }
  return oracle;
}

// Brute-force superset scan over the full subset enumeration.
inline std::vector<long long> brute_supersets(const std::vector<int>& group,
                                              int n, int k) {
  const auto subsets = colex_enumerate(n, k);
  std::vector<long long> out;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (std::includes(subsets[i].begin(), subsets[i].end(), group.begin(),
                      group.end()))
      out.push_back(static_cast<long long>(i));
  }
  return out;
}

inline std::vector<double> random_vector(long long size, std::uint64_t seed,
                                         double scale = 10.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, scale);
  std::vector<double> v(static_cast<std::size_t>(size));
  for (double& x : v) x = gauss(rng);
  return v;
}

inline lineups::Permutation random_permutation(int n, std::uint64_t seed) {
  std::vector<int> mapping(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mapping[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(mapping.begin(), mapping.end(), rng);
  return lineups::Permutation(std::move(mapping));
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

}  // namespace testing
