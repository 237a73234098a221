#include "lineups/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lineups {

namespace {

// Fixed counter-based sub-seed scheme so trial t is reproducible in
// isolation (shared with the bootstrap module).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::vector<double> group_indicator(const JohnsonSpace& space,
                                    const Group& group) {
  if (group.size() < 1 || group.size() > space.k)
    throw std::invalid_argument("group_indicator: group size out of [1, k]");
  std::vector<double> out(static_cast<std::size_t>(space.num_lineups), 0.0);
  for (LineupIndex idx : supersets_of(group, space.n, space.k))
    out[static_cast<std::size_t>(idx)] = 1.0;
  return out;
}

double group_contribution(const SpectralDecomposition& decomp,
                          const Group& group) {
  if (group.size() < 1 || group.size() > decomp.k)
    throw std::invalid_argument("group_contribution: group size out of [1, k]");
  const auto& component =
      decomp.components[static_cast<std::size_t>(group.size())];
  double sum = 0.0;
  for (LineupIndex idx : supersets_of(group, decomp.n, decomp.k))
    sum += component[static_cast<std::size_t>(idx)];
  return sum;
}

double sclp(double spectral_value, long long possessions) {
  if (possessions < 2)
    throw std::domain_error("sclp: undefined for possessions < 2");
  return spectral_value / std::log(static_cast<double>(possessions));
}

MassDistribution mass_distribution(const SpectralDecomposition& decomp) {
  MassDistribution m;
  m.fractions.resize(decomp.components.size(), 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < decomp.components.size(); ++j) {
    double sq = 0.0;
    for (double x : decomp.components[j]) sq += x * x;
    m.fractions[j] = sq;
    total += sq;
  }
  if (total <= 0.0)
    throw std::invalid_argument("mass_distribution: zero function");
  for (double& f : m.fractions) f /= total;
  return m;
}

MassDistribution null_mass(const JohnsonSpace& space) {
  MassDistribution m;
  m.fractions.reserve(space.dims.size());
  for (long long d : space.dims)
    m.fractions.push_back(static_cast<double>(d) /
                          static_cast<double>(space.num_lineups));
  return m;
}

MassDistribution permutation_null_mass(const JohnsonSpace& space,
                                       std::span<const double> f, int trials,
                                       std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("permutation_null_mass: trials must be >= 1");
  if (static_cast<long long>(f.size()) != space.num_lineups)
    throw std::invalid_argument("permutation_null_mass: length mismatch");
  double norm_sq = 0.0;
  for (double x : f) norm_sq += x * x;
  if (norm_sq <= 0.0)
    throw std::invalid_argument("permutation_null_mass: zero function");

  MassDistribution mean;
  mean.fractions.assign(static_cast<std::size_t>(space.k) + 1, 0.0);
  std::vector<double> shuffled(f.begin(), f.end());
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
    shuffled.assign(f.begin(), f.end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const MassDistribution m = mass_distribution(decompose(space, shuffled));
    for (std::size_t j = 0; j < mean.fractions.size(); ++j)
      mean.fractions[j] += m.fractions[j];
  }
  for (double& x : mean.fractions) x /= trials;
  return mean;
}

std::vector<GroupContribution> rank_groups(
    const SpectralDecomposition& decomp,
    const std::function<long long(const Group&)>& possessions_of, int order,
    long long min_possessions, RankKey key) {
  if (order < 1 || order > decomp.k)
    throw std::invalid_argument("rank_groups: order out of [1, k]");

  const std::vector<double> recon = decomp.reconstruct();
  const auto& component = decomp.components[static_cast<std::size_t>(order)];

  std::vector<GroupContribution> rows;
  const long long num_groups = binomial(decomp.n, order);
  for (long long gi = 0; gi < num_groups; ++gi) {
    Group g = unrank_subset(gi, decomp.n, order);
    const long long poss = possessions_of(g);
    if (poss < min_possessions) continue;
    if (key == RankKey::kSclp && poss < 2) continue;

    GroupContribution row;
    row.order = order;
    row.possessions = poss;
    row.spectral_value = 0.0;
    row.plus_minus = 0.0;
    for (LineupIndex idx : supersets_of(g, decomp.n, decomp.k)) {
      row.spectral_value += component[static_cast<std::size_t>(idx)];
      row.plus_minus += recon[static_cast<std::size_t>(idx)];
    }
    if (poss >= 2) row.sclp = sclp(row.spectral_value, poss);
    row.group = std::move(g);
    rows.push_back(std::move(row));
  }

  const auto sort_value = [key](const GroupContribution& r) {
    return key == RankKey::kSclp ? *r.sclp : r.spectral_value;
  };
  std::sort(rows.begin(), rows.end(),
            [&](const GroupContribution& a, const GroupContribution& b) {
              const double va = sort_value(a), vb = sort_value(b);
              if (va != vb) return va > vb;
              if (a.possessions != b.possessions)
                return a.possessions > b.possessions;
              return a.group < b.group;
            });
  return rows;
}

}  // namespace lineups
