#include "signvote/cli/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>


namespace signvote::cli {

const CsvSchema& trajectory_schema() {
  static const CsvSchema schema{"trajectory",
                                {{"step", ColumnType::kInteger},
                                 {"objective", ColumnType::kReal},
                                 {"grad_l1", ColumnType::kReal},
                                 {"lr", ColumnType::kReal},
                                 {"flipped_coords", ColumnType::kInteger},
                                 {"tie_coords", ColumnType::kInteger}}};
  return schema;
}

const CsvSchema& sweep_summary_schema() {
  static const CsvSchema schema{"sweep_summary",
                                {{"axis_value", ColumnType::kText},
                                 {"repeat", ColumnType::kInteger},
                                 {"final_objective", ColumnType::kReal, true},
                                 {"mean_flip_rate", ColumnType::kReal, true},
                                 {"seed", ColumnType::kInteger}}};
  return schema;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string header_line(const CsvSchema& schema) {
  std::string line;
  for (std::size_t i = 0; i < schema.columns.size(); ++i) {
    if (i) line += ',';
    line += schema.columns[i].name;
  }
  return line + '\n';
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

bool is_real(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

}  // namespace

std::string trajectory_csv(const RunResult& result) {
  std::string out = header_line(trajectory_schema());
  for (const auto& r : result.trajectory) {
    out += std::to_string(r.step) + ',' + format_real(r.objective_value) + ',' + format_real(r.grad_l1) + ',' +
           format_real(r.lr) + ',' + std::to_string(r.flipped_coords) + ',' + std::to_string(r.tie_coords) + '\n';
  }
  return out;
}

std::string sweep_summary_csv(std::span<const SweepPoint> points) {
  std::string out = header_line(sweep_summary_schema());
  for (const auto& p : points) {
    out += p.axis_value + ',' + std::to_string(p.repeat) + ',';
    if (p.result) out += format_real(p.result->final_objective) + ',' + format_real(p.result->mean_flip_rate());
    else out += ',';
    out += ',' + std::to_string(p.seed) + '\n';
  }
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto fields = split_fields(text.substr(pos, nl - pos));
    if (first) table.header = std::move(fields);
    else table.rows.push_back(std::move(fields));
    first = false;
    pos = nl + 1;
  }
  return table;
}

std::string check_csv(std::string_view text, const CsvSchema& schema, std::size_t expected_rows) {
  if (text.empty() || text.back() != '\n') return std::string(schema.name) + ": missing trailing newline";
  const CsvTable table = parse_csv(text);
  if (table.header.size() != schema.columns.size()) return std::string(schema.name) + ": wrong header width";
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    if (table.header[c] != schema.columns[c].name)
      return std::string(schema.name) + ": header column " + std::to_string(c) + " is '" + table.header[c] +
             "', expected '" + std::string(schema.columns[c].name) + "'";
  }
  if (table.rows.size() != expected_rows)
    return std::string(schema.name) + ": " + std::to_string(table.rows.size()) + " rows, expected " +
           std::to_string(expected_rows);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != schema.columns.size())
      return std::string(schema.name) + ": row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
             " fields";
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Column& col = schema.columns[c];
      if (row[c].empty() && col.nullable) continue;
      const bool ok = col.type == ColumnType::kInteger ? is_integer(row[c])
                      : col.type == ColumnType::kReal  ? is_real(row[c])
                                                       : !row[c].empty();
      if (!ok)
        return std::string(schema.name) + ": row " + std::to_string(r + 1) + " column '" + std::string(col.name) +
               "' has malformed value '" + row[c] + "'";
    }
  }
  return {};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace signvote::cli
