#pragma once

#include <optional>

#include "smcc/linear_program.hpp"

namespace smcc {

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<BasicSolution> solution;  // present for Optimal / Feasible
};

/// Phase-1 primal simplex over exact rationals. Returns a basic feasible
/// point (with its tight-constraint witness) or the Infeasible verdict; the
/// verdict is exact, there is no tolerance anywhere. Bland's rule (lowest
/// index entering and leaving) prevents cycling, so termination is
/// unconditional even on heavily degenerate programs.
SolveResult solve_feasible(const LinearProgram& lp);

/// Two-phase simplex minimizing lp.objective. Returns an optimal basic
/// solution with exact objective value, or Infeasible / Unbounded.
SolveResult solve_minimize(const LinearProgram& lp);

}  // namespace smcc
