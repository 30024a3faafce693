#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hdchain {

/// One value in a report: an integer, a real or a label.
using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

/// Tabular command output plus the configuration that produced it.
/// `config` keeps insertion order so renderings are stable.
struct Report {
  std::string version;
  std::vector<std::pair<std::string, Cell>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Reals are printed with 15 significant digits ("%.15g").
[[nodiscard]] std::string format_real(double value);

/// `# key=value` provenance lines, then a header row and one line per row.
[[nodiscard]] std::string render_csv(const Report& report);

/// {"config": {...}, "results": [{column: value, ...}, ...], "version": "..."}
[[nodiscard]] std::string render_json(const Report& report);

}  // namespace hdchain
