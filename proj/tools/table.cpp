#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace patdens::cli {

namespace {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

nlohmann::ordered_json to_json(const Cell& c) {
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return *u;
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::strtod(format_real(*d).c_str(), nullptr);
  }
  return std::get<std::string>(c);
}

}  // namespace

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("row has " + std::to_string(row.size()) + " cells, table has " +
                           std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string render_cell(const Cell& c) {
  if (const auto* u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  return std::get<std::string>(c);
}

std::string render_csv(const ResultTable& t) {
  std::string out = "# " + t.tool + "\n";
  for (const auto& [key, value] : t.config) out += "# config: " + key + "=" + value + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + render_cell(row[i]);
    out += "\n";
  }
  for (const auto& [key, value] : t.footer) out += "# " + key + "=" + render_cell(value) + "\n";
  return out;
}

std::string render_json(const ResultTable& t) {
  nlohmann::ordered_json doc;
  doc["tool"] = t.tool;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : t.config) doc["config"][key] = value;
  doc["columns"] = t.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto& r = doc["rows"].emplace_back(nlohmann::ordered_json::array());
    for (const auto& c : row) r.push_back(to_json(c));
  }
  doc["footer"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : t.footer) doc["footer"][key] = to_json(value);
  return doc.dump(2) + "\n";
}

}  // namespace patdens::cli
