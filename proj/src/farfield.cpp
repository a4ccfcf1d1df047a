// farfield.cpp — far-field table utilities and CSV round-trip.
#include "scat/farfield.hpp"

#include <cmath>

namespace scat {

std::string convention_name(Convention c) {
  return c == Convention::kPaper ? "paper" : "physical";
}

Convention parse_convention(const std::string& name) {
  if (name == "paper") return Convention::kPaper;
  if (name == "physical") return Convention::kPhysical;
  throw ValidationError("unknown convention '" + name + "' (expected paper|physical)");
}

void FarFieldTable::check_compatible(const FarFieldTable& other) const {
  if (convention != other.convention)
    throw ValidationError("far-field tables use different conventions (" +
                          convention_name(convention) + " vs " +
                          convention_name(other.convention) + ")");
  if (num_xhat() != other.num_xhat() || num_theta() != other.num_theta())
    throw ValidationError("far-field tables have different grid sizes");
}

void FarFieldTable::check_unit_directions() const {
  for (const auto* dirs : {&xhats, &thetas})
    for (const Vec3& v : *dirs)
      if (std::fabs(v.norm() - 1.0) > 1e-12)
        throw ValidationError("direction vector is not unit length");
}

void write_farfield(const FarFieldTable& table, const std::string& path,
                    CsvHeader header) {
  header.convention = convention_name(table.convention);
  CsvWriter out(path, header, "theta_ix,xhat_ix,re,im");
  for (int t = 0; t < table.num_theta(); ++t)
    for (int x = 0; x < table.num_xhat(); ++x)
      out.row({std::to_string(t), std::to_string(x), fmt17(table.values(x, t).real()),
               fmt17(table.values(x, t).imag())});
}

FarFieldTable read_farfield(const std::string& path) {
  const CsvFile file = CsvFile::read(path);
  const int ct = file.column_index("theta_ix"), cx = file.column_index("xhat_ix"),
            cr = file.column_index("re"), ci = file.column_index("im");
  int nt = 0, nx = 0;
  for (const auto& row : file.rows) {
    nt = std::max(nt, std::stoi(row[ct]) + 1);
    nx = std::max(nx, std::stoi(row[cx]) + 1);
  }
  if (nt == 0 || nx == 0) throw ValidationError("far-field csv has no rows: " + path);
  FarFieldTable table;
  table.convention = parse_convention(file.header.convention);
  table.values = Eigen::MatrixXcd::Zero(nx, nt);
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(nx, nt);
  for (const auto& row : file.rows) {
    const int t = std::stoi(row[ct]);
    const int x = std::stoi(row[cx]);
    table.values(x, t) = cplx(std::stod(row[cr]), std::stod(row[ci]));
    seen(x, t) += 1;
  }
  if (seen.minCoeff() != 1 || seen.maxCoeff() != 1)
    throw ValidationError("far-field csv is not a complete single-valued grid: " + path);
  return table;
}

}  // namespace scat
