#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixhom/harness/config.hpp"

namespace mixhom::harness {

/// Bumped whenever an experiment's row names or table columns change.
inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws std::out_of_range for an unknown column.
  std::size_t column(const std::string& name) const;
};

/// Line plot of one or more table columns against another.
struct PlotSpec {
  std::string name;
  std::string table;
  std::string x;
  std::vector<std::string> y;
  bool log_x = true;
  bool log_y = false;
};

struct Report {
  std::string experiment;
  /// Named scalar results, in insertion order.
  std::vector<std::pair<std::string, double>> rows;
  std::vector<Table> tables;
  std::vector<PlotSpec> plots;

  void add(std::string name, double value) { rows.emplace_back(std::move(name), value); }
  std::optional<double> find(const std::string& name) const;
};

/// `%.17g`, with nan / inf / -inf spelled out.
std::string format_number(double v);

std::string to_csv(const Table& t);
/// rows.csv content: header `name,value` then one line per row.
std::string rows_csv(const Report& r);
/// Self-contained SVG; non-positive values are dropped on log axes.
std::string render_svg(const Table& t, const PlotSpec& p);
std::string manifest_json(const Report& r, const Config& c, const std::vector<std::string>& files);

/// Writes rows.csv, one CSV per table, one SVG per plot and manifest.json into `dir`.
/// Returns the file names written. Throws std::runtime_error naming the path on I/O failure.
std::vector<std::string> emit_report(const Report& r, const Config& c, const std::filesystem::path& dir);

}  // namespace mixhom::harness
