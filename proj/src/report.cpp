#include "hdchain/report.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace hdchain {

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
  if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
  return std::get<std::string>(cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return *u;
  if (const auto* d = std::get_if<double>(&cell)) {
    // Round-trip through the 15-digit text so JSON and CSV carry the same number.
    const auto text = format_real(*d);
    double rounded = *d;
    std::from_chars(text.data(), text.data() + text.size(), rounded);
    return rounded;
  }
  return std::get<std::string>(cell);
}

}  // namespace

std::string format_real(double value) {
  // Locale-independent equivalent of %.15g.
  char buffer[40];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 15);
  return std::string(buffer, result.ptr);
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  out << "# version=" << report.version << '\n';
  for (const auto& [key, value] : report.config) out << "# " << key << '=' << cell_text(value) << '\n';
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    out << (c ? "," : "") << report.columns[c];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
    out << '\n';
  }
  return out.str();
}

std::string render_json(const Report& report) {
  nlohmann::ordered_json doc;
  auto& config = doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.config) config[key] = cell_json(value);
  auto& results = doc["results"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json entry = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) entry[report.columns[c]] = cell_json(row[c]);
    results.push_back(std::move(entry));
  }
  doc["version"] = report.version;
  return doc.dump(2) + "\n";
}

}  // namespace hdchain
