#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace patdens::cli {

/// Counts, reals (rendered with 9 significant digits) or verbatim text such
/// as "2/21".
using Cell = std::variant<std::uint64_t, double, std::string>;

struct ResultTable {
  std::string tool;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> footer;

  void add_row(std::vector<Cell> row);
};

std::string render_cell(const Cell& c);

/// Comment header, column row, data rows, comment footer; '\n' line endings.
std::string render_csv(const ResultTable& t);

/// Same content as one JSON object. Reals carry the exact values printed in
/// the CSV rendering.
std::string render_json(const ResultTable& t);

}  // namespace patdens::cli
