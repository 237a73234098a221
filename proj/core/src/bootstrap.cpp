#include "lineups/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace lineups {

namespace {

// Same counter-based scheme as permutation_null_mass.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(std::span<const double> xs) {
  MeanSd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return out;
}

}  // namespace

std::vector<PlayRecord> resample_plays(std::span<const PlayRecord> plays,
                                       std::uint64_t seed) {
  if (plays.empty())
    throw std::invalid_argument("resample_plays: empty play list");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, plays.size() - 1);
  std::vector<PlayRecord> out;
  out.reserve(plays.size());
  for (std::size_t i = 0; i < plays.size(); ++i) out.push_back(plays[pick(rng)]);
  return out;
}

double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("pearson_r: length mismatch");
  if (xs.size() < 2)
    throw std::invalid_argument("pearson_r: need at least two points");
  const MeanSd mx = mean_sd(xs);
  const MeanSd my = mean_sd(ys);
  if (mx.sd == 0.0 || my.sd == 0.0)
    throw std::domain_error("pearson_r: zero variance");
  double cov = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    cov += (xs[i] - mx.mean) * (ys[i] - my.mean);
  cov /= static_cast<double>(xs.size() - 1);
  return cov / (mx.sd * my.sd);
}

std::vector<BootstrapReport> bootstrap_group_stats(
    std::span<const PlayRecord> plays, const std::vector<std::string>& roster,
    int k, std::span<const Group> groups, int B, std::uint64_t seed) {
  if (B < 1) throw std::invalid_argument("bootstrap_group_stats: B must be >= 1");
  if (plays.empty())
    throw std::invalid_argument("bootstrap_group_stats: empty play list");

  const int n = static_cast<int>(roster.size());
  const JohnsonSpace space = make_space(n, k);

  // Original-season possessions decide which groups are reportable at all.
  const SuccessFunction original =
      build_success_function(build_stints(plays), roster, k);

  struct GroupScratch {
    std::vector<LineupIndex> supersets;
    std::vector<double> pm;
    std::vector<double> poss;
  };
  std::vector<GroupScratch> scratch(groups.size());
  std::vector<BootstrapReport> reports(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    reports[g].group = groups[g];
    reports[g].valid = group_possessions(original, groups[g]) > 0;
    scratch[g].supersets = supersets_of(groups[g], n, k);
    scratch[g].pm.reserve(static_cast<std::size_t>(B));
    scratch[g].poss.reserve(static_cast<std::size_t>(B));
    reports[g].sclp_values.reserve(static_cast<std::size_t>(B));
    reports[g].pm_per_log_poss_values.reserve(static_cast<std::size_t>(B));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int t = 0; t < B; ++t) {
    std::vector<PlayRecord> resampled =
        resample_plays(plays, mix_seed(seed, static_cast<std::uint64_t>(t)));
    // Restore chronological order before stinting: in raw resampled order
    // nearly every play is a one-sided singleton stint that the
    // zero-possession rule drops, collapsing the season's plus-minus.
    std::stable_sort(resampled.begin(), resampled.end(),
                     [](const PlayRecord& a, const PlayRecord& b) {
                       if (a.game_id != b.game_id) return a.game_id < b.game_id;
                       return a.sequence < b.sequence;
                     });
    const SuccessFunction fn =
        build_success_function(build_stints(resampled), roster, k);
    const SpectralDecomposition decomp = decompose(space, fn.values);

    for (std::size_t g = 0; g < groups.size(); ++g) {
      double pm = 0.0;
      long long poss = 0;
      for (LineupIndex idx : scratch[g].supersets) {
        pm += fn.values[static_cast<std::size_t>(idx)];
        poss += fn.lineup_possessions[static_cast<std::size_t>(idx)];
      }
      const double spectral = group_contribution(decomp, groups[g]);
      scratch[g].pm.push_back(pm);
      scratch[g].poss.push_back(static_cast<double>(poss));
      if (poss >= 2) {
        const double log_poss = std::log(static_cast<double>(poss));
        reports[g].sclp_values.push_back(spectral / log_poss);
        reports[g].pm_per_log_poss_values.push_back(pm / log_poss);
      } else {
        reports[g].sclp_values.push_back(nan);
        reports[g].pm_per_log_poss_values.push_back(nan);
      }
    }
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    BootstrapReport& report = reports[g];
    const MeanSd pm = mean_sd(scratch[g].pm);
    const MeanSd poss = mean_sd(scratch[g].poss);
    report.pm_mean = pm.mean;
    report.pm_sd = pm.sd;
    report.poss_mean = poss.mean;
    report.poss_sd = poss.sd;

    long long pm_negative = 0;
    for (double x : scratch[g].pm)
      if (x < 0.0) ++pm_negative;
    report.frac_pm_negative =
        static_cast<double>(pm_negative) / static_cast<double>(B);

    std::vector<double> sclp_defined, pmperlp_defined;
    long long sclp_negative = 0;
    for (int t = 0; t < B; ++t) {
      const double s = report.sclp_values[static_cast<std::size_t>(t)];
      const double p = report.pm_per_log_poss_values[static_cast<std::size_t>(t)];
      if (std::isnan(s) || std::isnan(p)) continue;
      sclp_defined.push_back(s);
      pmperlp_defined.push_back(p);
      if (s < 0.0) ++sclp_negative;
    }
    report.frac_sclp_negative =
        sclp_defined.empty()
            ? nan
            : static_cast<double>(sclp_negative) /
                  static_cast<double>(sclp_defined.size());
    if (sclp_defined.size() >= 2) {
      const MeanSd sx = mean_sd(sclp_defined);
      const MeanSd sy = mean_sd(pmperlp_defined);
      report.pearson_r = (sx.sd == 0.0 || sy.sd == 0.0)
                             ? nan
                             : pearson_r(sclp_defined, pmperlp_defined);
    } else {
      report.pearson_r = nan;
    }
    if (!report.valid) {
      report.frac_sclp_negative = nan;
      report.pearson_r = nan;
    }
  }
  return reports;
}

}  // namespace lineups
