#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lineups/ingest.hpp"

namespace lineups {

enum class Command { kDecompose, kContributions, kStability, kMass, kRidge, kSynth };

enum class OutputFormat { kCsv, kJson };

/// One resolved invocation. Randomized commands (stability, mass, ridge,
/// synth) require an explicit seed; there is no wall-clock default.
struct RunConfig {
  Command command = Command::kDecompose;
  std::string input_path;
  std::string output_path;  // directory; created if absent
  int n = 15;
  int k = 5;
  std::optional<int> order;           // contributions/stability; default all/2
  long long min_possessions = 0;
  int trials = 500;                   // stability B / mass permutation trials
  std::optional<std::uint64_t> seed;
  std::vector<double> lambda_grid;
  int folds = 10;
  OutputFormat format = OutputFormat::kCsv;
  bool rank_by_spectral = false;      // contributions: sort by raw spectral value
  bool observed_only = false;         // ridge: fit on observed lineups only
  long long num_plays = 0;            // synth
  std::vector<PlantedEffect> planted; // synth
  double usage_skew = 0.0;            // synth
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunResult {
  std::vector<std::string> files_written;
};

/// Dispatches one command: reads the input, runs the pipeline, writes report
/// files under output_path. Identical config + input produce byte-identical
/// outputs.
RunResult run(const RunConfig& config);

/// "a;b;c:0.25" -> planted effect on the group of those 0-based ids.
PlantedEffect parse_planted_effect(const std::string& text);

}  // namespace lineups
