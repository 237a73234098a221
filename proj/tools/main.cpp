// Command-line front end: lineup success decomposition, group contribution
// reports, bootstrap stability, mass diagnostics, ridge comparison, and
// synthetic season generation.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lineups/report_io.hpp"
#include "lineups/run.hpp"

namespace {

struct CliOptions {
  lineups::RunConfig config;
  std::vector<std::string> planted_text;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CliOptions* opts, bool needs_input) {
  auto* input = cmd->add_option("--input", opts->config.input_path,
                                "Play-by-play CSV input");
  if (needs_input) input->required();
  cmd->add_option("--output", opts->config.output_path,
                  "Output directory (created if absent)")
      ->required();
  cmd->add_option("--n", opts->config.n, "Roster size")->capture_default_str();
  cmd->add_option("--k", opts->config.k, "Lineup size")->capture_default_str();
  cmd->add_option("--format", opts->format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void add_seed(CLI::App* cmd, CliOptions* opts) {
  cmd->add_option("--seed", opts->config.seed,
                  "Random seed (required; echoed in output metadata)")
      ->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral decomposition of lineup plus-minus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lineups::kVersion);

  CliOptions opts;

  auto* decompose = app.add_subcommand(
      "decompose", "Success function and its per-order components");
  add_common(decompose, &opts, true);

  auto* contributions = app.add_subcommand(
      "contributions", "Ranked group contributions per order");
  add_common(contributions, &opts, true);
  contributions->add_option("--order", opts.config.order,
                            "Single order to report (default: all)");
  contributions->add_option("--min-poss", opts.config.min_possessions,
                            "Possession floor for reported groups")
      ->capture_default_str();
  contributions->add_flag("--rank-by-spectral", opts.config.rank_by_spectral,
                          "Sort by raw spectral value instead of SCLP");

  auto* stability =
      app.add_subcommand("stability", "Bootstrap stability statistics");
  add_common(stability, &opts, true);
  add_seed(stability, &opts);
  stability->add_option("--order", opts.config.order, "Group order (default 2)");
  stability->add_option("--min-poss", opts.config.min_possessions,
                        "Possession floor for bootstrapped groups")
      ->capture_default_str();
  stability->add_option("--trials", opts.config.trials, "Bootstrap seasons")
      ->capture_default_str();

  auto* mass = app.add_subcommand(
      "mass", "Squared-norm mass split: actual, null, permutation null");
  add_common(mass, &opts, true);
  add_seed(mass, &opts);
  mass->add_option("--trials", opts.config.trials, "Permutation trials")
      ->capture_default_str();

  auto* ridge = app.add_subcommand(
      "ridge", "Ridge regression on group indicators with CV");
  add_common(ridge, &opts, true);
  add_seed(ridge, &opts);
  ridge->add_option("--lambda-grid", opts.config.lambda_grid,
                    "Penalty grid (default 0.01..1000)");
  ridge->add_option("--folds", opts.config.folds, "CV folds")
      ->capture_default_str();
  ridge->add_flag("--observed-only", opts.config.observed_only,
                  "Fit on observed lineups only");

  auto* synth =
      app.add_subcommand("synth", "Write a deterministic synthetic season");
  add_common(synth, &opts, false);
  add_seed(synth, &opts);
  synth->add_option("--plays", opts.config.num_plays, "Number of plays")
      ->required();
  synth->add_option("--planted", opts.planted_text,
                    "Planted group effect \"0,1:0.4\" (repeatable)");
  synth->add_option("--usage-skew", opts.config.usage_skew,
                    "Player usage skew (0 = uniform)")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  opts.config.format = opts.format == "json" ? lineups::OutputFormat::kJson
                                             : lineups::OutputFormat::kCsv;
  if (decompose->parsed()) opts.config.command = lineups::Command::kDecompose;
  if (contributions->parsed())
    opts.config.command = lineups::Command::kContributions;
  if (stability->parsed()) opts.config.command = lineups::Command::kStability;
  if (mass->parsed()) opts.config.command = lineups::Command::kMass;
  if (ridge->parsed()) opts.config.command = lineups::Command::kRidge;
  if (synth->parsed()) opts.config.command = lineups::Command::kSynth;

  try {
    for (const std::string& text : opts.planted_text)
      opts.config.planted.push_back(lineups::parse_planted_effect(text));
    const lineups::RunResult result = lineups::run(opts.config);
    for (const std::string& file : result.files_written)
      std::cout << file << "\n";
    return 0;
  } catch (const lineups::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const lineups::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const lineups::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
