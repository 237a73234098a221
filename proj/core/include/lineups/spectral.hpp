#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lineups/johnson.hpp"

namespace lineups {

/// One row of a group-contribution report.
struct GroupContribution {
  Group group;
  int order = 0;                // |group|
  double spectral_value = 0.0;  // pure order-|group| contribution
  std::optional<double> sclp;   // defined only when possessions >= 2
  double plus_minus = 0.0;      // raw PM summed over lineups containing group
  long long possessions = 0;
};

/// Fractions of squared L2 mass per effect space; non-negative, sums to 1.
struct MassDistribution {
  std::vector<double> fractions;  // k+1 entries
};

/// Indicator vector of a group: 1 on lineups containing it, 0 elsewhere.
std::vector<double> group_indicator(const JohnsonSpace& space,
                                    const Group& group);

/// Pure order-|g| contribution of a group g: the sum of the order-|g|
/// component over all lineups containing g. Equals the dot product of the
/// group indicator with that component, the unnormalized inner product of
/// their projections into the order-|g| space.
double group_contribution(const SpectralDecomposition& decomp,
                          const Group& group);

/// Spectral contribution per log possession. Requires possessions >= 2
/// (ln 1 = 0 and ln 0 is undefined); callers exclude such groups instead.
double sclp(double spectral_value, long long possessions);

/// fractions[j] = ||f_j||^2 / ||f||^2. Throws on the zero function.
MassDistribution mass_distribution(const SpectralDecomposition& decomp);

/// The dimension-proportional baseline: fractions[j] = dim V_j / C(n, k),
/// the expected mass split of a random unit vector.
MassDistribution null_mass(const JohnsonSpace& space);

/// Mean mass fractions over `trials` uniformly random permutations of the
/// entries of f (breaking any lineup-value association). Deterministic given
/// the seed; trial t uses a sub-seed derived from (seed, t).
MassDistribution permutation_null_mass(const JohnsonSpace& space,
                                       std::span<const double> f, int trials,
                                       std::uint64_t seed);

enum class RankKey {
  kSclp,           // SCLP descending; groups with possessions < 2 excluded
  kSpectralValue,  // raw spectral value descending
};

/// All groups of the given order with possessions >= min_possessions, sorted
/// by the chosen key descending; ties by possessions descending, then by
/// group ascending.
std::vector<GroupContribution> rank_groups(
    const SpectralDecomposition& decomp,
    const std::function<long long(const Group&)>& possessions_of, int order,
    long long min_possessions, RankKey key = RankKey::kSclp);

}  // namespace lineups
