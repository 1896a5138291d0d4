#include "dicke/table.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dicke {

std::string format_cell(const Cell& c) {
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<std::int64_t>(c)) {
    return std::to_string(std::get<std::int64_t>(c));
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(c));
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row width does not match the header");
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column named " + name);
}

void write_csv(std::ostream& os, const Table& t, const CsvMeta& meta) {
  os << "# " << meta.tool << '\n';
  os << "# command: " << meta.command << '\n';
  os << "# config: " << meta.config << '\n';
  os << "# " << meta.timestamp_line << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_cell(row[i]);
    }
    os << '\n';
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

Cell infer_cell(const std::string& text) {
  if (!text.empty()) {
    std::int64_t iv = 0;
    const auto [ip, iec] =
        std::from_chars(text.data(), text.data() + text.size(), iv);
    if (iec == std::errc() && ip == text.data() + text.size()) return iv;

    errno = 0;
    char* end = nullptr;
    const double dv = std::strtod(text.c_str(), &end);
    if (end == text.c_str() + text.size() && errno != ERANGE) return dv;
  }
  return text;
}

}  // namespace

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cells = split_line(line);
    if (!have_header) {
      t.columns = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.columns.size()) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
    std::vector<Cell> row;
    row.reserve(cells.size());
    for (auto& c : cells) row.push_back(infer_cell(c));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("CSV has no header line");
  return t;
}

void write_ndjson(std::ostream& os, const Table& t) {
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<double>(c)) {
        obj[t.columns[i]] = std::get<double>(c);
      } else if (std::holds_alternative<std::int64_t>(c)) {
        obj[t.columns[i]] = std::get<std::int64_t>(c);
      } else {
        obj[t.columns[i]] = std::get<std::string>(c);
      }
    }
    os << obj.dump() << '\n';
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
    if (!os.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace dicke
