#include "smcc/linear_program.hpp"

#include <stdexcept>
#include <string>

namespace smcc {

void validate_program(const LinearProgram& lp) {
  if (lp.num_vars < 0) throw std::invalid_argument("negative num_vars");
  auto check_map = [&](const std::map<int, Rational>& coeffs,
                       const char* where) {
    for (const auto& [var, coeff] : coeffs) {
      (void)coeff;
      if (var < 0 || var >= lp.num_vars) {
        throw std::invalid_argument(std::string("variable index ") +
                                    std::to_string(var) + " out of range in " +
                                    where);
      }
    }
  };
  for (const auto& row : lp.rows) check_map(row.coeffs, "row");
  check_map(lp.objective, "objective");
}

bool check_basic(const LinearProgram& lp, const BasicSolution& sol) {
  const int n = lp.num_vars;
  if (sol.values.size() != n) return false;
  for (int j = 0; j < n; ++j) {
    if (sol.values(j) < 0) return false;
  }

  std::vector<int> tight_rows;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const LinearRow& row = lp.rows[r];
    Rational lhs = 0;
    for (const auto& [var, coeff] : row.coeffs) lhs += coeff * sol.values(var);
    if (row.sense == RowSense::Eq) {
      if (lhs != row.rhs) return false;
      tight_rows.push_back(static_cast<int>(r));
    } else {
      if (lhs > row.rhs) return false;
      if (lhs == row.rhs) tight_rows.push_back(static_cast<int>(r));
    }
  }

  std::vector<int> tight_vars;
  for (int j = 0; j < n; ++j) {
    if (sol.values(j) == 0) tight_vars.push_back(j);
  }

  if (n == 0) return true;
  RatMatrix normals = RatMatrix::Zero(
      static_cast<Eigen::Index>(tight_rows.size() + tight_vars.size()), n);
  Eigen::Index out = 0;
  for (int r : tight_rows) {
    for (const auto& [var, coeff] : lp.rows[static_cast<std::size_t>(r)].coeffs) {
      normals(out, var) = coeff;
    }
    ++out;
  }
  for (int j : tight_vars) {
    normals(out, j) = 1;
    ++out;
  }
  return exact_rank(std::move(normals)) == n;
}

}  // namespace smcc
