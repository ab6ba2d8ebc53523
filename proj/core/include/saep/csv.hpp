#pragma once

#include <string>
#include <vector>

namespace saep::csv {

// Minimal CSV support for the documented schemas: comma-separated, no quoting,
// '#'-prefixed lines are comments. Each Row keeps its 1-based source line for
// error reporting.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

// Reads the file, checks the header matches `expected` exactly.
Table read_file(const std::string& path, const std::vector<std::string>& expected);

std::string join(const std::vector<std::string>& fields);

double parse_double(const std::string& s, const std::string& path, std::size_t line,
                    const std::string& field);
std::int64_t parse_int(const std::string& s, const std::string& path, std::size_t line,
                       const std::string& field);

// Fixed-point formatting helpers used by the report writers.
std::string fixed(double v, int decimals);
// Shortest representation that reparses to the same double.
std::string exact(double v);

}  // namespace saep::csv
