#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lineups {

inline constexpr const char* kVersion = "0.1.0";

/// Reproducibility header written at the top of every output file.
struct OutputMeta {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::string input_digest;  // "-" when the command reads no input
  std::vector<std::pair<std::string, std::string>> extra;
};

using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with `# key=value` metadata lines, then header, then rows.
/// Doubles carry 6 significant digits.
void write_table_csv(std::ostream& out, const OutputMeta& meta,
                     const Table& table);

/// JSON object {"metadata": {...}, "rows": [{...}]} with full double
/// precision.
void write_table_json(std::ostream& out, const OutputMeta& meta,
                      const Table& table);

/// FNV-1a 64-bit digest, as 16 hex characters.
std::string fnv1a64_hex(std::string_view bytes);

std::string format_sig6(double value);

}  // namespace lineups
