#pragma once

#include <map>
#include <optional>
#include <vector>

#include "smcc/linalg.hpp"
#include "smcc/rational.hpp"

namespace smcc {

enum class RowSense { LessEq, Eq };

struct LinearRow {
  std::map<int, Rational> coeffs;  // sparse; absent means 0
  RowSense sense = RowSense::LessEq;
  Rational rhs = 0;
};

/// A linear program over non-negative variables. Rows are <= or =; the
/// objective (minimized) may be empty for pure feasibility problems.
struct LinearProgram {
  int num_vars = 0;
  std::vector<LinearRow> rows;
  std::map<int, Rational> objective;
};

/// Throws std::invalid_argument if any referenced variable index is out of
/// range or num_vars is negative.
void validate_program(const LinearProgram& lp);

/// The tight constraints that pin a basic solution: row indices satisfied
/// with equality plus variables at their zero bound. Linearly independent,
/// exactly num_vars of them.
struct BasisWitness {
  std::vector<int> tight_rows;
  std::vector<int> tight_vars;
};

struct BasicSolution {
  RatVector values;                       // original variables only
  std::optional<Rational> objective_value;
  BasisWitness witness;
};

/// Independent auditor for the basic-solution property: true iff every row
/// holds exactly (correct sense, zero residual bookkeeping), all values are
/// non-negative, and the system of tight constraints at `sol` has rank
/// num_vars. Recomputes everything from the program data by exact Gaussian
/// elimination; never looks at the solver's witness.
bool check_basic(const LinearProgram& lp, const BasicSolution& sol);

}  // namespace smcc
