#pragma once

// Output helpers: atomic file writes and self-describing CSV / JSON artifacts.
// Every artifact starts with the tool version and the effective configuration.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace qrefl {

// Insertion-ordered so that the metadata block stays at the top of each file.
using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "qrefl";
inline constexpr const char* kVersion = "1.0.0";

std::string version_string();

// Writes to a temporary sibling and renames it over the target. Creates the
// parent directory if needed. Throws ConfigError on I/O failure.
void write_atomic(const std::filesystem::path& path, const std::string& content);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const noexcept { return rows_.size(); }

  // '#' comment lines (version, config, extra notes), then the column header.
  std::string render(const Json& config, const std::vector<std::string>& notes = {}) const;
  // Same table as a JSON document {"meta": ..., "columns": [...], "rows": [[...], ...]}.
  Json to_json(const Json& config) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Shortest round-trip decimal representation.
std::string fmt(double v);

Json meta_block(const Json& config);

}  // namespace qrefl
