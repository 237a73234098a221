#include "lineups/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace lineups {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_int(const std::string& s, long long* out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  return ec == std::errc() && ptr == last && !s.empty();
}

// Sorted, non-empty, duplicate-free player list of the expected size.
bool parse_players(const std::string& field, int expected,
                   std::vector<std::string>* out, std::string* error) {
  *out = split(field, ';');
  if (static_cast<int>(out->size()) != expected) {
    *error = "expected " + std::to_string(expected) + " players, got " +
             std::to_string(out->size());
    return false;
  }
  std::sort(out->begin(), out->end());
  for (std::size_t i = 0; i < out->size(); ++i) {
    if ((*out)[i].empty()) {
      *error = "empty player name";
      return false;
    }
    if (i > 0 && (*out)[i] == (*out)[i - 1]) {
      *error = "duplicate player '" + (*out)[i] + "'";
      return false;
    }
  }
  return true;
}

const char* const kColumns[] = {"game_id",  "sequence",    "team_players",
                                "opp_players", "pts_for",  "pts_against",
                                "poss_for", "poss_against"};

}  // namespace

ParseResult parse_play_csv(std::istream& in, int players_per_side) {
  if (players_per_side < 1)
    throw std::invalid_argument("parse_play_csv: players_per_side must be >= 1");

  // Leading '#' lines are metadata written by the generator; skip to the
  // header row.
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    have_header = true;
    break;
  }
  if (!have_header)
    throw std::runtime_error("parse_play_csv: empty input, header required");

  const std::vector<std::string> header = split(line, ',');
  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col.emplace(header[i], i);
  for (const char* name : kColumns) {
    if (!col.count(name))
      throw std::runtime_error(std::string("parse_play_csv: missing column '") +
                               name + "'");
  }

  ParseResult result;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != header.size()) {
      result.row_errors.push_back(
          {line_no, "expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(fields.size())});
      continue;
    }

    PlayRecord play;
    std::string error;
    play.game_id = fields[col["game_id"]];

    long long seq = 0, pts_for = 0, pts_against = 0, poss_for = 0,
              poss_against = 0;
    if (!parse_int(fields[col["sequence"]], &seq)) {
      result.row_errors.push_back({line_no, "bad sequence"});
      continue;
    }
    if (!parse_int(fields[col["pts_for"]], &pts_for) ||
        !parse_int(fields[col["pts_against"]], &pts_against) ||
        pts_for < 0 || pts_against < 0) {
      result.row_errors.push_back({line_no, "bad points"});
      continue;
    }
    if (!parse_int(fields[col["poss_for"]], &poss_for) ||
        !parse_int(fields[col["poss_against"]], &poss_against) ||
        poss_for < 0 || poss_for > 1 || poss_against < 0 || poss_against > 1) {
      result.row_errors.push_back({line_no, "possessions must be 0 or 1"});
      continue;
    }
    if (poss_for + poss_against < 1) {
      result.row_errors.push_back({line_no, "play carries no possession"});
      continue;
    }
    if (!parse_players(fields[col["team_players"]], players_per_side,
                       &play.team_players, &error)) {
      result.row_errors.push_back({line_no, "team_players: " + error});
      continue;
    }
    if (!parse_players(fields[col["opp_players"]], players_per_side,
                       &play.opp_players, &error)) {
      result.row_errors.push_back({line_no, "opp_players: " + error});
      continue;
    }

    play.sequence = seq;
    play.pts_for = static_cast<int>(pts_for);
    play.pts_against = static_cast<int>(pts_against);
    play.poss_for = static_cast<int>(poss_for);
    play.poss_against = static_cast<int>(poss_against);
    result.plays.push_back(std::move(play));
  }
  return result;
}

std::vector<Stint> build_stints(std::span<const PlayRecord> plays) {
  std::vector<Stint> stints;
  for (const PlayRecord& play : plays) {
    const bool merge = !stints.empty() &&
                       stints.back().game_id == play.game_id &&
                       stints.back().team_players == play.team_players &&
                       stints.back().opp_players == play.opp_players;
    if (!merge) {
      Stint s;
      s.game_id = play.game_id;
      s.team_players = play.team_players;
      s.opp_players = play.opp_players;
      stints.push_back(std::move(s));
    }
    Stint& s = stints.back();
    s.pts_for += play.pts_for;
    s.pts_against += play.pts_against;
    s.poss_for += play.poss_for;
    s.poss_against += play.poss_against;
  }
  return stints;
}

double stint_plus_minus(const Stint& stint) {
  if (stint.poss_for < 1 || stint.poss_against < 1)
    throw std::domain_error("stint_plus_minus: zero possessions on one side");
  const double rate_for =
      static_cast<double>(stint.pts_for) / static_cast<double>(stint.poss_for);
  const double rate_against = static_cast<double>(stint.pts_against) /
                              static_cast<double>(stint.poss_against);
  return (rate_for - rate_against) * static_cast<double>(stint.poss_for);
}

RosterSelection select_roster(std::span<const PlayRecord> plays,
                              int roster_size) {
  if (roster_size < 1)
    throw std::invalid_argument("select_roster: roster_size must be >= 1");

  std::map<std::string, long long> usage;  // possessions on floor per player
  for (const PlayRecord& play : plays) {
    const long long poss = play.poss_for + play.poss_against;
    for (const std::string& p : play.team_players) usage[p] += poss;
  }

  std::vector<std::pair<std::string, long long>> by_usage(usage.begin(),
                                                          usage.end());
  std::sort(by_usage.begin(), by_usage.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int>(by_usage.size()) > roster_size)
    by_usage.resize(static_cast<std::size_t>(roster_size));

  RosterSelection sel;
  sel.roster.reserve(by_usage.size());
  for (const auto& [name, poss] : by_usage) sel.roster.push_back(name);
  std::sort(sel.roster.begin(), sel.roster.end());

  for (const PlayRecord& play : plays) {
    const bool keep = std::all_of(
        play.team_players.begin(), play.team_players.end(),
        [&](const std::string& p) {
          return std::binary_search(sel.roster.begin(), sel.roster.end(), p);
        });
    if (keep) sel.plays.push_back(play);
  }
  return sel;
}

std::optional<PlayerId> SuccessFunction::id_of(const std::string& name) const {
  const auto it = std::lower_bound(roster.begin(), roster.end(), name);
  if (it == roster.end() || *it != name) return std::nullopt;
  return static_cast<PlayerId>(it - roster.begin());
}

Group SuccessFunction::to_group(const std::vector<std::string>& names) const {
  std::vector<PlayerId> ids;
  ids.reserve(names.size());
  for (const std::string& name : names) {
    const auto id = id_of(name);
    if (!id) throw std::invalid_argument("unknown player '" + name + "'");
    ids.push_back(*id);
  }
  return Group(std::move(ids));
}

SuccessFunction build_success_function(std::span<const Stint> stints,
                                       std::vector<std::string> roster,
                                       int k, BuildDiagnostics* diag) {
  std::sort(roster.begin(), roster.end());
  SuccessFunction fn;
  fn.roster = std::move(roster);
  fn.k = k;
  const long long num = binomial(fn.n(), k);
  fn.values.assign(static_cast<std::size_t>(num), 0.0);
  fn.lineup_possessions.assign(static_cast<std::size_t>(num), 0);

  for (const Stint& stint : stints) {
    const Group lineup = fn.to_group(stint.team_players);
    if (lineup.size() != k)
      throw std::invalid_argument("build_success_function: stint lineup size != k");
    const auto idx = static_cast<std::size_t>(rank_subset(lineup, fn.n()));
    if (stint.poss_for >= 1 && stint.poss_against >= 1) {
      fn.values[idx] += stint_plus_minus(stint);
    } else if (diag) {
      ++diag->zero_possession_stints;
    }
    fn.lineup_possessions[idx] += stint.poss_for;
  }
  return fn;
}

long long group_possessions(const SuccessFunction& fn, const Group& group) {
  long long total = 0;
  for (LineupIndex idx : supersets_of(group, fn.n(), fn.k))
    total += fn.lineup_possessions[static_cast<std::size_t>(idx)];
  return total;
}

double group_plus_minus(const SuccessFunction& fn, const Group& group) {
  double total = 0.0;
  for (LineupIndex idx : supersets_of(group, fn.n(), fn.k))
    total += fn.values[static_cast<std::size_t>(idx)];
  return total;
}

std::vector<std::string> synthetic_roster(int n) {
  std::vector<std::string> roster;
  roster.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::string name = "P";
    if (i < 10) name += '0';
    name += std::to_string(i);
    roster.push_back(std::move(name));
  }
  return roster;
}

namespace {

// 0/1/2/3 points for one possession; `effect` shifts expected points by
// roughly one point per unit.
int draw_points(std::mt19937_64& rng, double effect) {
  const double p3 = 0.08;
  const double p2 = std::clamp(0.38 + 0.5 * effect, 0.02, 0.88);
  const double p1 = 0.10;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  if (u < p3) return 3;
  if (u < p3 + p2) return 2;
  if (u < p3 + p2 + p1) return 1;
  return 0;
}

std::vector<int> sample_lineup(std::mt19937_64& rng,
                               const std::vector<double>& weights, int k) {
  const int n = static_cast<int>(weights.size());
  std::vector<double> w = weights;
  std::vector<int> picked;
  picked.reserve(static_cast<std::size_t>(k));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int take = 0; take < k; ++take) {
    double total = 0.0;
    for (double x : w) total += x;
    double u = unit(rng) * total;
    int choice = n - 1;
    for (int i = 0; i < n; ++i) {
      if (w[static_cast<std::size_t>(i)] <= 0.0) continue;
      u -= w[static_cast<std::size_t>(i)];
      if (u <= 0.0) {
        choice = i;
        break;
      }
    }
    picked.push_back(choice);
    w[static_cast<std::size_t>(choice)] = 0.0;
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace

std::vector<PlayRecord> generate_synthetic_season(const SynthConfig& config) {
  if (config.n < 1 || config.k < 1 || config.k > config.n)
    throw std::invalid_argument("generate_synthetic_season: bad (n, k)");
  if (config.num_plays < 0)
    throw std::invalid_argument("generate_synthetic_season: bad num_plays");
  for (const PlantedEffect& effect : config.planted) {
    if (effect.group.size() < 1 || effect.group.size() > config.k ||
        effect.group.members().back() >= config.n)
      throw std::invalid_argument("generate_synthetic_season: bad planted group");
  }

  const std::vector<std::string> team = synthetic_roster(config.n);
  std::vector<std::string> opponents;
  opponents.reserve(static_cast<std::size_t>(config.n));
  for (int i = 1; i <= config.n; ++i) {
    std::string name = "Q";
    if (i < 10) name += '0';
    name += std::to_string(i);
    opponents.push_back(std::move(name));
  }

  std::vector<double> weights(static_cast<std::size_t>(config.n));
  for (int i = 0; i < config.n; ++i)
    weights[static_cast<std::size_t>(i)] =
        std::exp(-config.usage_skew * static_cast<double>(i) /
                 static_cast<double>(config.n));

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::geometric_distribution<int> extra_rounds(0.35);

  std::vector<PlayRecord> plays;
  plays.reserve(static_cast<std::size_t>(config.num_plays));
  long long sequence = 0;
  int stints_in_game = 0;
  int game_no = 1;

  while (static_cast<long long>(plays.size()) < config.num_plays) {
    const std::vector<int> lineup_ids = sample_lineup(rng, weights, config.k);
    const Group lineup{std::vector<PlayerId>(lineup_ids.begin(), lineup_ids.end())};
    std::vector<double> opp_uniform(static_cast<std::size_t>(config.n), 1.0);
    const std::vector<int> opp_ids = sample_lineup(rng, opp_uniform, config.k);

    std::vector<std::string> team_names, opp_names;
    for (int id : lineup_ids) team_names.push_back(team[static_cast<std::size_t>(id)]);
    for (int id : opp_ids) opp_names.push_back(opponents[static_cast<std::size_t>(id)]);

    double effect = 0.0;
    for (const PlantedEffect& planted : config.planted)
      if (planted.group.subset_of(lineup)) effect += planted.points_per_possession;

    const int rounds = 1 + std::min(extra_rounds(rng), 7);
    for (int r = 0; r < rounds; ++r) {
      // One team possession, then one opponent possession.
      for (int side = 0; side < 2; ++side) {
        if (static_cast<long long>(plays.size()) >= config.num_plays) break;
        PlayRecord play;
        play.game_id = "G" + std::to_string(game_no);
        play.sequence = ++sequence;
        play.team_players = team_names;
        play.opp_players = opp_names;
        if (side == 0) {
          play.poss_for = 1;
          play.pts_for = draw_points(rng, effect);
        } else {
          play.poss_against = 1;
          play.pts_against = draw_points(rng, 0.0);
        }
        plays.push_back(std::move(play));
      }
    }

    if (++stints_in_game >= 40) {
      stints_in_game = 0;
      ++game_no;
    }
  }
  return plays;
}

}  // namespace lineups
