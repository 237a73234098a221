#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lineups/combinatorics.hpp"

namespace lineups {

/// A single possession-level event. Exactly one side records a possession
/// on most plays; poss_for + poss_against >= 1 always.
struct PlayRecord {
  std::string game_id;
  long long sequence = 0;
  std::vector<std::string> team_players;  // sorted, no duplicates
  std::vector<std::string> opp_players;   // sorted, no duplicates
  int pts_for = 0;
  int pts_against = 0;
  int poss_for = 0;      // 0 or 1
  int poss_against = 0;  // 0 or 1
};

struct RowError {
  std::size_t line = 0;  // 1-based line number in the source
  std::string message;
};

struct ParseResult {
  std::vector<PlayRecord> plays;
  std::vector<RowError> row_errors;
};

/// Parses the canonical play CSV. Header is required with exact column names
///   game_id,sequence,team_players,opp_players,pts_for,pts_against,poss_for,poss_against
/// (any order; extra columns ignored). Player lists are semicolon-joined
/// names, exactly `players_per_side` per side. A missing column is a hard
/// error; malformed rows are skipped and reported with line numbers.
ParseResult parse_play_csv(std::istream& in, int players_per_side = 5);

/// A maximal run of plays with no substitution on either side within a game.
struct Stint {
  std::string game_id;
  std::vector<std::string> team_players;
  std::vector<std::string> opp_players;
  long long pts_for = 0;
  long long pts_against = 0;
  long long poss_for = 0;
  long long poss_against = 0;
};

/// Merges consecutive plays with identical (game_id, team, opponent) sides.
/// Plays must already be in (game_id, sequence) order; contiguity is the
/// rule, so an A,B,A lineup pattern yields three stints.
std::vector<Stint> build_stints(std::span<const PlayRecord> plays);

/// (pts_for/poss_for - pts_against/poss_against) * poss_for.
/// Throws std::domain_error when either side has zero possessions.
double stint_plus_minus(const Stint& stint);

struct RosterSelection {
  std::vector<std::string> roster;  // sorted by name; PlayerId = position
  std::vector<PlayRecord> plays;    // plays whose team side is within roster
};

/// Keeps the `roster_size` players with the most possessions on the floor
/// (ties by name ascending) and drops plays using anyone else. When fewer
/// distinct players appear, all of them form the roster.
RosterSelection select_roster(std::span<const PlayRecord> plays,
                              int roster_size = 15);

/// The team success function: aggregate plus-minus and possessions per
/// lineup, indexed by colexicographic lineup rank.
struct SuccessFunction {
  std::vector<std::string> roster;  // sorted names; PlayerId = position
  int k = 5;
  std::vector<double> values;
  std::vector<long long> lineup_possessions;

  int n() const { return static_cast<int>(roster.size()); }
  long long num_lineups() const { return static_cast<long long>(values.size()); }
  std::optional<PlayerId> id_of(const std::string& name) const;
  Group to_group(const std::vector<std::string>& names) const;
};

struct BuildDiagnostics {
  long long zero_possession_stints = 0;  // contributed 0 PM, flagged
};

/// Aggregates stint plus-minus into the lineup vector. Stints where either
/// side has zero possessions contribute 0 (their possessions still count)
/// and are tallied in the diagnostics. Throws on players outside the roster.
SuccessFunction build_success_function(std::span<const Stint> stints,
                                       std::vector<std::string> roster,
                                       int k = 5,
                                       BuildDiagnostics* diag = nullptr);

/// Sum of lineup possessions over all lineups containing the group.
long long group_possessions(const SuccessFunction& fn, const Group& group);

/// total plus-minus of a group: sum of f over lineups containing it.
double group_plus_minus(const SuccessFunction& fn, const Group& group);

struct PlantedEffect {
  Group group;                       // ids into the synthetic roster
  double points_per_possession = 0;  // added to team scoring when on floor
};

struct SynthConfig {
  int n = 15;
  int k = 5;
  long long num_plays = 0;
  std::vector<PlantedEffect> planted;
  std::uint64_t seed = 0;
  double usage_skew = 0.0;  // 0 = uniform player usage; higher skews playing time
};

/// Roster names used by the generator: "P01", "P02", ...
std::vector<std::string> synthetic_roster(int n);

/// Deterministic synthetic season. Lineups are drawn with the configured
/// usage skew; team scoring is biased by planted group effects so planted
/// synergies are recoverable from the decomposition.
std::vector<PlayRecord> generate_synthetic_season(const SynthConfig& config);

}  // namespace lineups
