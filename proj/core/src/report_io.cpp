#include "lineups/report_io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace lineups {

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

std::string format_sig6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::string(buf);
}

namespace {

void write_meta_lines(std::ostream& out, const OutputMeta& meta) {
  out << "# command=" << meta.command << "\n";
  out << "# version=" << kVersion << "\n";
  out << "# seed=" << (meta.seed ? std::to_string(*meta.seed) : "-") << "\n";
  out << "# input=" << (meta.input_digest.empty() ? "-" : meta.input_digest)
      << "\n";
  for (const auto& [key, value] : meta.extra)
    out << "# " << key << "=" << value << "\n";
}

}  // namespace

void write_table_csv(std::ostream& out, const OutputMeta& meta,
                     const Table& table) {
  write_meta_lines(out, meta);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              out << format_sig6(v);
            else
              out << v;
          },
          row[i]);
    }
    out << "\n";
  }
}

void write_table_json(std::ostream& out, const OutputMeta& meta,
                      const Table& table) {
  nlohmann::json doc;
  nlohmann::json metadata;
  metadata["command"] = meta.command;
  metadata["version"] = kVersion;
  if (meta.seed)
    metadata["seed"] = *meta.seed;
  else
    metadata["seed"] = nullptr;
  metadata["input"] = meta.input_digest.empty() ? "-" : meta.input_digest;
  for (const auto& [key, value] : meta.extra) metadata[key] = value;
  doc["metadata"] = std::move(metadata);

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

}  // namespace lineups
