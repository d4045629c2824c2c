#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "signvote/sim.hpp"

namespace signvote::cli {

enum class ColumnType { kInteger, kReal, kText };

struct Column {
  std::string_view name;
  ColumnType type;
  bool nullable = false;  // empty field allowed (failed sweep points)
};

struct CsvSchema {
  std::string_view name;
  std::vector<Column> columns;
};

const CsvSchema& trajectory_schema();
const CsvSchema& sweep_summary_schema();

// Numbers are written with 12 significant digits.
std::string format_real(double v);

std::string trajectory_csv(const RunResult& result);
std::string sweep_summary_csv(std::span<const SweepPoint> points);

// Header, field counts and field types. Returns an empty string when the
// text conforms, otherwise a description of the first problem.
std::string check_csv(std::string_view text, const CsvSchema& schema, std::size_t expected_rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(std::string_view text);

// Writes to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace signvote::cli
