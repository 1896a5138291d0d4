#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace dicke {

/// One typed cell of an output table. Doubles print as %.17g (lossless),
/// integers plainly, strings verbatim (no quoting; cell strings must not
/// contain separators or newlines).
using Cell = std::variant<double, std::int64_t, std::string>;

std::string format_cell(const Cell& c);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;  // throws if absent
};

/// CSV layout: '#'-prefixed metadata lines (tool version, config echo,
/// timestamp), a header line with exact column names, then one data line per
/// row. The timestamp line is the only line allowed to vary between reruns.
struct CsvMeta {
  std::string tool;     // "dicke <version>"
  std::string command;  // subcommand name
  std::string config;   // canonical "key=value key=value ..." echo
  std::string timestamp_line;  // preformatted "generated: ..." payload
};

void write_csv(std::ostream& os, const Table& t, const CsvMeta& meta);

/// Parses a CSV produced by write_csv: metadata lines are skipped, cells are
/// re-typed by inference (int64 if integral text, double if numeric, string
/// otherwise), so emit(parse(emit(x))) == emit(x).
Table read_csv(std::istream& is);

/// Newline-delimited JSON, one object per row in column order.
void write_ndjson(std::ostream& os, const Table& t);

/// Atomic file write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace dicke
