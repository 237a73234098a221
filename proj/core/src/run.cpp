#include "lineups/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "lineups/bootstrap.hpp"
#include "lineups/johnson.hpp"
#include "lineups/report_io.hpp"
#include "lineups/ridge.hpp"
#include "lineups/spectral.hpp"

namespace lineups {

namespace {

namespace fs = std::filesystem;

struct LoadedSeason {
  SuccessFunction fn;
  std::vector<PlayRecord> plays;  // roster-filtered, (game_id, sequence) order
  std::string digest;
  std::size_t row_errors = 0;
  long long zero_possession_stints = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

LoadedSeason load_season(const RunConfig& config) {
  if (config.input_path.empty())
    throw ConfigError("this command requires --input");
  LoadedSeason season;
  const std::string bytes = read_file(config.input_path);
  season.digest = fnv1a64_hex(bytes);

  std::istringstream stream(bytes);
  ParseResult parsed;
  try {
    parsed = parse_play_csv(stream, config.k);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  season.row_errors = parsed.row_errors.size();
  if (parsed.plays.empty())
    throw ParseError("no usable plays in " + config.input_path);

  std::stable_sort(parsed.plays.begin(), parsed.plays.end(),
                   [](const PlayRecord& a, const PlayRecord& b) {
                     if (a.game_id != b.game_id) return a.game_id < b.game_id;
                     return a.sequence < b.sequence;
                   });

  RosterSelection selection = select_roster(parsed.plays, config.n);
  BuildDiagnostics diag;
  season.fn = build_success_function(build_stints(selection.plays),
                                     selection.roster, config.k, &diag);
  season.zero_possession_stints = diag.zero_possession_stints;
  season.plays = std::move(selection.plays);

  if (season.fn.n() < config.k * 2)
    throw NumericalError("roster too small for lineup size: n=" +
                         std::to_string(season.fn.n()) +
                         ", k=" + std::to_string(config.k));
  return season;
}

std::string join_names(const SuccessFunction& fn, const Group& group) {
  std::string out;
  for (PlayerId id : group.members()) {
    if (!out.empty()) out += ';';
    out += fn.roster[static_cast<std::size_t>(id)];
  }
  return out;
}

std::string format_name(const RunConfig& config, const std::string& stem) {
  return stem + (config.format == OutputFormat::kCsv ? ".csv" : ".json");
}

std::string write_out(const RunConfig& config, const std::string& stem,
                      const OutputMeta& meta, const Table& table) {
  if (config.output_path.empty()) throw ConfigError("missing --output");
  fs::create_directories(config.output_path);
  const fs::path path = fs::path(config.output_path) / format_name(config, stem);
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  if (config.format == OutputFormat::kCsv)
    write_table_csv(out, meta, table);
  else
    write_table_json(out, meta, table);
  return path.string();
}

OutputMeta base_meta(const RunConfig& config, const std::string& command,
                     const std::string& digest) {
  OutputMeta meta;
  meta.command = command;
  meta.seed = config.seed;
  meta.input_digest = digest.empty() ? "-" : digest;
  meta.extra.emplace_back("n", std::to_string(config.n));
  meta.extra.emplace_back("k", std::to_string(config.k));
  return meta;
}

Cell opt_cell(std::optional<double> value) {
  if (value && std::isfinite(*value)) return Cell{*value};
  return Cell{std::string("")};
}

void require_seed(const RunConfig& config) {
  if (!config.seed)
    throw ConfigError("this command requires an explicit --seed");
}

RunResult run_decompose(const RunConfig& config) {
  LoadedSeason season = load_season(config);
  const SuccessFunction& fn = season.fn;
  const JohnsonSpace space = make_space(fn.n(), fn.k);
  const SpectralDecomposition decomp = decompose(space, fn.values);

  OutputMeta meta = base_meta(config, "decompose", season.digest);
  meta.extra.emplace_back("roster_n", std::to_string(fn.n()));
  meta.extra.emplace_back("row_errors", std::to_string(season.row_errors));
  meta.extra.emplace_back("zero_possession_stints",
                          std::to_string(season.zero_possession_stints));

  RunResult result;
  {
    Table table;
    table.columns = {"lineup", "pm", "possessions"};
    for (long long idx = 0; idx < fn.num_lineups(); ++idx) {
      const Group lineup = unrank_subset(idx, fn.n(), fn.k);
      table.rows.push_back(
          {join_names(fn, lineup), fn.values[static_cast<std::size_t>(idx)],
           fn.lineup_possessions[static_cast<std::size_t>(idx)]});
    }
    result.files_written.push_back(write_out(config, "success", meta, table));
  }
  {
    Table table;
    table.columns = {"lineup"};
    for (int j = 0; j <= fn.k; ++j)
      table.columns.push_back("order" + std::to_string(j));
    for (long long idx = 0; idx < fn.num_lineups(); ++idx) {
      const Group lineup = unrank_subset(idx, fn.n(), fn.k);
      std::vector<Cell> row{join_names(fn, lineup)};
      for (int j = 0; j <= fn.k; ++j)
        row.emplace_back(
            decomp.components[static_cast<std::size_t>(j)]
                             [static_cast<std::size_t>(idx)]);
      table.rows.push_back(std::move(row));
    }
    result.files_written.push_back(
        write_out(config, "components", meta, table));
  }
  return result;
}

RunResult run_contributions(const RunConfig& config) {
  LoadedSeason season = load_season(config);
  const SuccessFunction& fn = season.fn;
  const JohnsonSpace space = make_space(fn.n(), fn.k);
  const SpectralDecomposition decomp = decompose(space, fn.values);

  std::vector<int> orders;
  if (config.order) {
    if (*config.order < 1 || *config.order > fn.k)
      throw ConfigError("--order must be in [1, k]");
    orders.push_back(*config.order);
  } else {
    for (int j = 1; j <= fn.k; ++j) orders.push_back(j);
  }

  const auto possessions_of = [&fn](const Group& g) {
    return group_possessions(fn, g);
  };
  const RankKey key =
      config.rank_by_spectral ? RankKey::kSpectralValue : RankKey::kSclp;

  RunResult result;
  for (int order : orders) {
    const std::vector<GroupContribution> rows = rank_groups(
        decomp, possessions_of, order, config.min_possessions, key);
    Table table;
    table.columns = {"rank",        "group", "order",       "spectral_value",
                     "sclp",        "pm",    "pm_per_log_poss", "possessions"};
    long long rank = 0;
    for (const GroupContribution& row : rows) {
      std::optional<double> pmperlp;
      if (row.possessions >= 2)
        pmperlp = row.plus_minus / std::log(static_cast<double>(row.possessions));
      table.rows.push_back({++rank, join_names(fn, row.group),
                            static_cast<long long>(row.order),
                            row.spectral_value, opt_cell(row.sclp),
                            row.plus_minus, opt_cell(pmperlp),
                            row.possessions});
    }
    OutputMeta meta = base_meta(config, "contributions", season.digest);
    meta.extra.emplace_back("order", std::to_string(order));
    meta.extra.emplace_back("min_possessions",
                            std::to_string(config.min_possessions));
    meta.extra.emplace_back("rank_by",
                            config.rank_by_spectral ? "spectral_value" : "sclp");
    result.files_written.push_back(write_out(
        config, "contributions_order" + std::to_string(order), meta, table));
  }
  return result;
}

RunResult run_mass(const RunConfig& config) {
  require_seed(config);
  if (config.trials < 1) throw ConfigError("--trials must be >= 1");
  LoadedSeason season = load_season(config);
  const SuccessFunction& fn = season.fn;
  const JohnsonSpace space = make_space(fn.n(), fn.k);

  MassDistribution actual;
  try {
    actual = mass_distribution(decompose(space, fn.values));
  } catch (const std::exception& e) {
    throw NumericalError(e.what());
  }
  const MassDistribution null = null_mass(space);
  const MassDistribution permuted =
      permutation_null_mass(space, fn.values, config.trials, *config.seed);

  Table table;
  table.columns = {"distribution"};
  for (int j = 0; j <= fn.k; ++j)
    table.columns.push_back("order" + std::to_string(j));
  const auto add_row = [&](const std::string& label,
                           const MassDistribution& m) {
    std::vector<Cell> row{label};
    for (double f : m.fractions) row.emplace_back(f);
    table.rows.push_back(std::move(row));
  };
  add_row("actual", actual);
  add_row("null", null);
  add_row("permutation_null", permuted);

  OutputMeta meta = base_meta(config, "mass", season.digest);
  meta.extra.emplace_back("trials", std::to_string(config.trials));

  RunResult result;
  result.files_written.push_back(write_out(config, "mass", meta, table));
  return result;
}

RunResult run_stability(const RunConfig& config) {
  require_seed(config);
  if (config.trials < 1) throw ConfigError("--trials must be >= 1");
  LoadedSeason season = load_season(config);
  const SuccessFunction& fn = season.fn;
  const int order = config.order.value_or(2);
  if (order < 1 || order > fn.k) throw ConfigError("--order must be in [1, k]");

  std::vector<Group> groups;
  const long long num_groups = binomial(fn.n(), order);
  for (long long gi = 0; gi < num_groups; ++gi) {
    Group g = unrank_subset(gi, fn.n(), order);
    if (group_possessions(fn, g) >= std::max<long long>(config.min_possessions, 1))
      groups.push_back(std::move(g));
  }
  if (groups.empty())
    throw ConfigError("no groups of order " + std::to_string(order) +
                      " meet the possession floor");

  const std::vector<BootstrapReport> reports = bootstrap_group_stats(
      season.plays, fn.roster, fn.k, groups, config.trials, *config.seed);

  OutputMeta meta = base_meta(config, "stability", season.digest);
  meta.extra.emplace_back("order", std::to_string(order));
  meta.extra.emplace_back("trials", std::to_string(config.trials));
  meta.extra.emplace_back("min_possessions",
                          std::to_string(config.min_possessions));

  RunResult result;
  {
    Table table;
    table.columns = {"group",        "pm_mean", "pm_sd",
                     "poss_mean",    "poss_sd", "frac_pm_negative",
                     "frac_sclp_negative", "pearson_r"};
    for (const BootstrapReport& report : reports) {
      table.rows.push_back(
          {join_names(fn, report.group), report.pm_mean, report.pm_sd,
           report.poss_mean, report.poss_sd, report.frac_pm_negative,
           report.frac_sclp_negative, report.pearson_r});
    }
    result.files_written.push_back(write_out(config, "stability", meta, table));
  }
  {
    Table table;
    table.columns = {"group", "trial", "sclp", "pm_per_log_poss"};
    for (const BootstrapReport& report : reports) {
      for (int t = 0; t < config.trials; ++t) {
        const double s = report.sclp_values[static_cast<std::size_t>(t)];
        const double p =
            report.pm_per_log_poss_values[static_cast<std::size_t>(t)];
        table.rows.push_back({join_names(fn, report.group),
                              static_cast<long long>(t),
                              std::isnan(s) ? Cell{std::string("")} : Cell{s},
                              std::isnan(p) ? Cell{std::string("")} : Cell{p}});
      }
    }
    result.files_written.push_back(
        write_out(config, "stability_trials", meta, table));
  }
  return result;
}

RunResult run_ridge(const RunConfig& config) {
  require_seed(config);
  LoadedSeason season = load_season(config);
  const SuccessFunction& fn = season.fn;

  DesignMatrix dm;
  try {
    dm = build_design_matrix(fn.n(), fn.k);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  std::vector<double> y(fn.values.begin(), fn.values.end());
  if (config.observed_only) {
    std::vector<long long> keep;
    for (long long idx = 0; idx < fn.num_lineups(); ++idx)
      if (fn.lineup_possessions[static_cast<std::size_t>(idx)] > 0)
        keep.push_back(idx);
    if (static_cast<long long>(keep.size()) < config.folds)
      throw ConfigError("fewer observed lineups than folds");
    const Eigen::SparseMatrix<double, Eigen::RowMajor> rowmajor(dm.X);
    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<double> y_sub;
    for (std::size_t r = 0; r < keep.size(); ++r) {
      y_sub.push_back(y[static_cast<std::size_t>(keep[r])]);
      for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(
               rowmajor, static_cast<Eigen::Index>(keep[r]));
           it; ++it)
        triplets.emplace_back(static_cast<int>(r), static_cast<int>(it.col()),
                              1.0);
    }
    Eigen::SparseMatrix<double> x_sub(static_cast<Eigen::Index>(keep.size()),
                                      dm.X.cols());
    x_sub.setFromTriplets(triplets.begin(), triplets.end());
    dm.X = std::move(x_sub);
    y = std::move(y_sub);
  }

  std::vector<double> grid = config.lambda_grid;
  if (grid.empty()) grid = {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};

  CrossValidation cv;
  try {
    cv = cross_validate_lambda(dm, y, grid, config.folds, *config.seed);
  } catch (const std::exception& e) {
    throw NumericalError(e.what());
  }
  const RidgeFit fit = fit_ridge(dm, y, cv.best_lambda);

  OutputMeta meta = base_meta(config, "ridge", season.digest);
  meta.extra.emplace_back("lambda", format_sig6(cv.best_lambda));
  meta.extra.emplace_back("folds", std::to_string(config.folds));
  meta.extra.emplace_back("observed_only", config.observed_only ? "1" : "0");
  meta.extra.emplace_back("intercept", format_sig6(fit.intercept));

  RunResult result;
  {
    // Coefficients sorted descending within each order block.
    std::vector<long long> cols(dm.col_groups.size());
    std::iota(cols.begin(), cols.end(), 0);
    std::sort(cols.begin(), cols.end(), [&](long long a, long long b) {
      const int oa = dm.col_groups[static_cast<std::size_t>(a)].size();
      const int ob = dm.col_groups[static_cast<std::size_t>(b)].size();
      if (oa != ob) return oa < ob;
      const double ca = fit.coefficients[static_cast<Eigen::Index>(a)];
      const double cb = fit.coefficients[static_cast<Eigen::Index>(b)];
      if (ca != cb) return ca > cb;
      return dm.col_groups[static_cast<std::size_t>(a)] <
             dm.col_groups[static_cast<std::size_t>(b)];
    });
    Table table;
    table.columns = {"group", "order", "coefficient"};
    for (long long c : cols) {
      const Group& g = dm.col_groups[static_cast<std::size_t>(c)];
      table.rows.push_back({join_names(fn, g), static_cast<long long>(g.size()),
                            fit.coefficients[static_cast<Eigen::Index>(c)]});
    }
    result.files_written.push_back(write_out(config, "ridge", meta, table));
  }
  {
    Table table;
    table.columns = {"lambda", "cv_error"};
    for (std::size_t i = 0; i < grid.size(); ++i)
      table.rows.push_back({grid[i], cv.cv_errors[i]});
    result.files_written.push_back(write_out(config, "ridge_cv", meta, table));
  }
  return result;
}

RunResult run_synth(const RunConfig& config) {
  require_seed(config);
  if (config.num_plays < 1) throw ConfigError("--plays must be >= 1");

  SynthConfig synth;
  synth.n = config.n;
  synth.k = config.k;
  synth.num_plays = config.num_plays;
  synth.planted = config.planted;
  synth.seed = *config.seed;
  synth.usage_skew = config.usage_skew;

  std::vector<PlayRecord> plays;
  try {
    plays = generate_synthetic_season(synth);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }

  if (config.output_path.empty()) throw ConfigError("missing --output");
  fs::create_directories(config.output_path);
  const fs::path path = fs::path(config.output_path) / "plays.csv";
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());

  out << "# command=synth\n# version=" << kVersion << "\n# seed="
      << *config.seed << "\n# input=-\n# n=" << config.n
      << "\n# k=" << config.k << "\n# plays=" << config.num_plays
      << "\n# usage_skew=" << format_sig6(config.usage_skew) << "\n";
  for (const PlantedEffect& effect : config.planted) {
    out << "# planted=";
    for (std::size_t i = 0; i < effect.group.members().size(); ++i) {
      if (i) out << ',';
      out << effect.group.members()[i];
    }
    out << ':' << format_sig6(effect.points_per_possession) << "\n";
  }
  // The canonical play schema follows, so the file feeds straight back into
  // the other commands.
  out << "game_id,sequence,team_players,opp_players,pts_for,pts_against,"
         "poss_for,poss_against\n";
  for (const PlayRecord& play : plays) {
    std::string team, opp;
    for (const std::string& name : play.team_players) {
      if (!team.empty()) team += ';';
      team += name;
    }
    for (const std::string& name : play.opp_players) {
      if (!opp.empty()) opp += ';';
      opp += name;
    }
    out << play.game_id << ',' << play.sequence << ',' << team << ',' << opp
        << ',' << play.pts_for << ',' << play.pts_against << ','
        << play.poss_for << ',' << play.poss_against << "\n";
  }

  RunResult result;
  result.files_written.push_back(path.string());
  return result;
}

}  // namespace

PlantedEffect parse_planted_effect(const std::string& text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
    throw ConfigError("planted effect must look like \"0,1:0.4\"");
  std::vector<PlayerId> ids;
  std::string token;
  for (char c : text.substr(0, colon)) {
    if (c == ',' || c == ';') {
      if (!token.empty()) ids.push_back(std::stoi(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (!token.empty()) ids.push_back(std::stoi(token));
  PlantedEffect effect;
  try {
    effect.group = Group(std::move(ids));
    effect.points_per_possession = std::stod(text.substr(colon + 1));
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad planted effect: ") + e.what());
  }
  return effect;
}

RunResult run(const RunConfig& config) {
  switch (config.command) {
    case Command::kDecompose:
      return run_decompose(config);
    case Command::kContributions:
      return run_contributions(config);
    case Command::kStability:
      return run_stability(config);
    case Command::kMass:
      return run_mass(config);
    case Command::kRidge:
      return run_ridge(config);
    case Command::kSynth:
      return run_synth(config);
  }
  throw ConfigError("unknown command");
}

}  // namespace lineups
