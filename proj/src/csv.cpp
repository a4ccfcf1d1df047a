// csv.cpp — CSV parsing helpers.
#include "scat/csv.hpp"

#include <algorithm>

namespace scat {

CsvHeader CsvHeader::parse(const std::string& line) {
  CsvHeader h;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "convention") h.convention = val;
    else if (key == "kappa") h.kappa = val;
    else if (key == "a") h.a = val;
    else if (key == "t") h.t = val;
    else if (key == "seed") h.seed = val;
  }
  return h;
}

CsvFile CsvFile::read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open CSV file: " + path);
  CsvFile f;
  std::string line;
  bool have_columns = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      f.header = CsvHeader::parse(line);
      continue;
    }
    if (!have_columns) {
      for (auto& c : split(line, ',')) f.columns.push_back(trim(c));
      have_columns = true;
      continue;
    }
    f.rows.push_back(split(line, ','));
  }
  if (!have_columns) throw ValidationError("CSV has no column row: " + path);
  return f;
}

int CsvFile::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ValidationError("CSV is missing column '" + name + "'");
  return static_cast<int>(it - columns.begin());
}

}  // namespace scat
