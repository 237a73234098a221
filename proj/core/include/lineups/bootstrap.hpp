#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lineups/ingest.hpp"
#include "lineups/spectral.hpp"

namespace lineups {

/// Uniform resample of the play list, with replacement, same count as the
/// input, in drawn order. Deterministic given the seed.
std::vector<PlayRecord> resample_plays(std::span<const PlayRecord> plays,
                                       std::uint64_t seed);

/// Sample Pearson correlation. Requires equal lengths >= 2 and nonzero
/// variance on both sides.
double pearson_r(std::span<const double> xs, std::span<const double> ys);

/// Per-group stability statistics over B resampled seasons.
struct BootstrapReport {
  Group group;
  bool valid = true;  // false when the group never saw the floor originally
  double pm_mean = 0.0;
  double pm_sd = 0.0;
  double poss_mean = 0.0;
  double poss_sd = 0.0;
  std::vector<double> sclp_values;             // length B; NaN where undefined
  std::vector<double> pm_per_log_poss_values;  // length B; NaN where undefined
  double frac_pm_negative = 0.0;
  double frac_sclp_negative = 0.0;
  double pearson_r = 0.0;  // between SCLP and PMperLP over defined trials
};

/// For each of B trials: resample plays, rebuild stints by contiguity in the
/// resampled order, rebuild the success function on the fixed original
/// roster, decompose, and record each group's spectral and raw statistics.
/// Trial t uses a sub-seed derived from (seed, t), so trials are
/// order-independent and reproducible in isolation.
std::vector<BootstrapReport> bootstrap_group_stats(
    std::span<const PlayRecord> plays, const std::vector<std::string>& roster,
    int k, std::span<const Group> groups, int B, std::uint64_t seed);

}  // namespace lineups
