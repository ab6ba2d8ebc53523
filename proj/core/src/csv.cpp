#include "saep/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "saep/error.hpp"

namespace saep::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Table read_file(const std::string& path, const std::vector<std::string>& expected) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open file");
  Table table;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line);
    if (!have_header) {
      if (fields != expected) {
        throw Error(path + ":" + std::to_string(lineno) + ": bad header, expected '" +
                    join(expected) + "' got '" + line + "'");
      }
      table.header = fields;
      have_header = true;
      continue;
    }
    if (fields.size() != expected.size()) {
      throw Error(path + ":" + std::to_string(lineno) + ": expected " +
                  std::to_string(expected.size()) + " fields, got " +
                  std::to_string(fields.size()));
    }
    table.rows.push_back({lineno, std::move(fields)});
  }
  if (!have_header) throw Error(path + ": missing header row");
  return table;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += fields[i];
  }
  return out;
}

double parse_double(const std::string& s, const std::string& path, std::size_t line,
                    const std::string& field) {
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw Error(path + ":" + std::to_string(line) + ": field '" + field +
                "' is not a number: '" + s + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& s, const std::string& path, std::size_t line,
                       const std::string& field) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw Error(path + ":" + std::to_string(line) + ": field '" + field +
                "' is not an integer: '" + s + "'");
  }
  return v;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  // avoid "-0.0000"
  if (buf[0] == '-') {
    bool all_zero = true;
    for (const char* p = buf + 1; *p; ++p) {
      if (*p != '0' && *p != '.') { all_zero = false; break; }
    }
    if (all_zero) return std::string(buf + 1);
  }
  return buf;
}

std::string exact(double v) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace saep::csv
