// farfield.hpp — far-field pattern tables on product direction grids, shared by
// the point-scatterer and equivalent-medium solvers, with CSV persistence.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "scat/common.hpp"
#include "scat/csv.hpp"

namespace scat {

// Normalization of U∞: the "paper" convention is the bare charge/potential sum;
// "physical" divides by 4π so that a single small sphere of radius r gives
// U∞ ≈ −r and the scattered wave satisfies U^s ~ e^{iκ|x|}/|x| · U∞.
enum class Convention { kPaper, kPhysical };

std::string convention_name(Convention c);
Convention parse_convention(const std::string& name);

struct FarFieldTable {
  std::vector<Vec3> xhats;   // observation directions
  std::vector<Vec3> thetas;  // incident directions
  Eigen::MatrixXcd values;   // values(xhat index, theta index)
  Convention convention = Convention::kPhysical;

  int num_xhat() const { return static_cast<int>(values.rows()); }
  int num_theta() const { return static_cast<int>(values.cols()); }

  // Throws unless the two tables share grid sizes and convention.
  void check_compatible(const FarFieldTable& other) const;
  // Unit-length check on all stored directions (tolerance 1e-12).
  void check_unit_directions() const;
};

// CSV columns: theta_ix, xhat_ix, re, im, theta-major ordering. The caller's
// header supplies kappa/a/t/seed; the convention field is filled from the table.
void write_farfield(const FarFieldTable& table, const std::string& path,
                    CsvHeader header);

// Reads values and convention back; direction lists are left empty (the file
// stores only grid indices), so the result supports sup-norm comparison but not
// direction-dependent postprocessing.
FarFieldTable read_farfield(const std::string& path);

}  // namespace scat
