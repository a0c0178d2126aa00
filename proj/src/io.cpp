#include "qrefl/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "qrefl/errors.hpp"

namespace qrefl {

namespace fs = std::filesystem;

std::string version_string() { return std::string(kToolName) + " " + kVersion; }

void write_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw ConfigError("write to '" + tmp.string() + "' failed");
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw ConfigError("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json meta_block(const Json& config) {
  return {{"tool", kToolName}, {"version", kVersion}, {"config", config}};
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("CSV row width mismatch");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render(const Json& config, const std::vector<std::string>& notes) const {
  std::string out = "# " + version_string() + "\n# config: " + config.dump() + "\n";
  for (const auto& n : notes) out += "# " + n + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

Json CsvTable::to_json(const Json& config) const {
  Json rows = Json::array();
  for (const auto& row : rows_) {
    Json r = Json::array();
    for (const auto& cell : row) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec == std::errc() && res.ptr == cell.data() + cell.size() && std::isfinite(v))
        r.push_back(v);
      else
        r.push_back(cell);
    }
    rows.push_back(std::move(r));
  }
  return {{"meta", meta_block(config)}, {"columns", columns_}, {"rows", std::move(rows)}};
}

}  // namespace qrefl
