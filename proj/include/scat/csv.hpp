// csv.hpp — deterministic CSV emission and parsing.
//
// All numeric output uses "%.17g" (round-trip safe for IEEE doubles) so that re-running
// a pipeline with identical inputs produces byte-identical files. Every emitted CSV
// starts with a single comment header line naming convention, kappa, a, t and seed.
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scat/common.hpp"

namespace scat {

// Formats a double with 17 significant digits (C locale, no grouping).
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// The mandatory CSV comment header. Fields that do not apply to a given artifact are
// written as "none" so every file still names all five keys.
struct CsvHeader {
  std::string convention = "none";
  std::string kappa = "none";
  std::string a = "none";
  std::string t = "none";
  std::string seed = "none";

  std::string line() const {
    return "# convention=" + convention + " kappa=" + kappa + " a=" + a + " t=" + t +
           " seed=" + seed;
  }

  static CsvHeader parse(const std::string& line);
};

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const CsvHeader& header, const std::string& columns)
      : out_(path, std::ios::binary) {
    if (!out_) throw ValidationError("cannot open output file: " + path);
    out_ << header.line() << "\n" << columns << "\n";
  }

  // Writes one row; cells are already formatted strings.
  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ",";
      out_ << cells[i];
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

// A parsed CSV: header key-values, column names, and string cells per row.
struct CsvFile {
  CsvHeader header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  static CsvFile read(const std::string& path);
  int column_index(const std::string& name) const;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace scat
