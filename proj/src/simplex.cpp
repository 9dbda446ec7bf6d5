// Primal simplex on a dense rational tableau.
//
// Standard form: every <= row gains a slack; rows are sign-normalized so the
// right-hand side is non-negative; rows without a usable slack column get an
// artificial variable. Phase 1 minimizes the artificial sum, phase 2 the
// caller's objective. Both phases pivot by Bland's rule: the entering column
// is the lowest-index column with a negative reduced cost, the leaving row is
// the minimum-ratio row with the lowest-index basic variable. Artificial
// columns never re-enter. Redundant rows (an artificial stuck basic at zero
// with no structural pivot available) are removed before phase 2.

#include "smcc/simplex.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace smcc {
namespace {

struct Tableau {
  int num_structural = 0;
  int num_slack = 0;
  int num_artificial = 0;
  RatMatrix coeff;               // rows x cols()
  RatVector rhs;                 // always >= 0
  std::vector<int> basis;        // basic column of each row
  std::vector<int> orig_row;     // tableau row -> LinearProgram row index
  std::vector<int> slack_col;    // LinearProgram row index -> slack column or -1

  int rows() const { return static_cast<int>(basis.size()); }
  int cols() const { return num_structural + num_slack + num_artificial; }
  bool is_artificial(int col) const {
    return col >= num_structural + num_slack;
  }
};

Tableau build_tableau(const LinearProgram& lp) {
  Tableau t;
  t.num_structural = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  t.slack_col.assign(static_cast<std::size_t>(m), -1);

  int slack = 0;
  for (const auto& row : lp.rows) {
    if (row.sense == RowSense::LessEq) ++slack;
  }
  t.num_slack = slack;

  // An artificial is needed wherever the initial slack column cannot serve as
  // the basic unit column: equality rows, and <= rows whose rhs is negative
  // (sign normalization flips their slack coefficient to -1).
  int artificial = 0;
  for (const auto& row : lp.rows) {
    if (row.sense == RowSense::Eq || row.rhs < 0) ++artificial;
  }
  t.num_artificial = artificial;

  t.coeff = RatMatrix::Zero(m, t.cols());
  t.rhs = RatVector::Zero(m);
  t.basis.assign(static_cast<std::size_t>(m), -1);
  t.orig_row.resize(static_cast<std::size_t>(m));

  int next_slack = t.num_structural;
  int next_artificial = t.num_structural + t.num_slack;
  for (int r = 0; r < m; ++r) {
    const LinearRow& row = lp.rows[static_cast<std::size_t>(r)];
    t.orig_row[static_cast<std::size_t>(r)] = r;
    const bool negate = row.rhs < 0;
    for (const auto& [var, coeff] : row.coeffs) {
      t.coeff(r, var) = negate ? Rational(-coeff) : coeff;
    }
    t.rhs(r) = negate ? Rational(-row.rhs) : row.rhs;
    if (row.sense == RowSense::LessEq) {
      int s = next_slack++;
      t.slack_col[static_cast<std::size_t>(r)] = s;
      t.coeff(r, s) = negate ? -1 : 1;
    }
    if (row.sense == RowSense::Eq || negate) {
      int a = next_artificial++;
      t.coeff(r, a) = 1;
      t.basis[static_cast<std::size_t>(r)] = a;
    } else {
      t.basis[static_cast<std::size_t>(r)] =
          t.slack_col[static_cast<std::size_t>(r)];
    }
  }
  return t;
}

void pivot(Tableau& t, RatVector* cost, int row, int col) {
  const int cols = t.cols();
  Rational piv = t.coeff(row, col);
  if (piv != 1) {
    for (int c = 0; c < cols; ++c) {
      if (t.coeff(row, c) != 0) t.coeff(row, c) /= piv;
    }
    t.rhs(row) /= piv;
  }
  for (int r = 0; r < t.rows(); ++r) {
    if (r == row) continue;
    Rational factor = t.coeff(r, col);
    if (factor == 0) continue;
    for (int c = 0; c < cols; ++c) {
      if (t.coeff(row, c) != 0) t.coeff(r, c) -= factor * t.coeff(row, c);
    }
    t.rhs(r) -= factor * t.rhs(row);
  }
  if (cost != nullptr) {
    Rational factor = (*cost)(col);
    if (factor != 0) {
      for (int c = 0; c < cols; ++c) {
        if (t.coeff(row, c) != 0) (*cost)(c) -= factor * t.coeff(row, c);
      }
    }
  }
  t.basis[static_cast<std::size_t>(row)] = col;
}

enum class PhaseOutcome { Optimal, Unbounded };

PhaseOutcome run_phase(Tableau& t, RatVector& cost) {
  for (;;) {
    int enter = -1;
    for (int j = 0; j < t.cols(); ++j) {
      if (t.is_artificial(j)) continue;
      if (cost(j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return PhaseOutcome::Optimal;

    int leave = -1;
    Rational best_ratio;
    for (int r = 0; r < t.rows(); ++r) {
      const Rational& a = t.coeff(r, enter);
      if (a <= 0) continue;
      Rational ratio = t.rhs(r) / a;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio &&
           t.basis[static_cast<std::size_t>(r)] <
               t.basis[static_cast<std::size_t>(leave)])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return PhaseOutcome::Unbounded;
    pivot(t, &cost, leave, enter);
  }
}

void erase_row(Tableau& t, int row) {
  const int m = t.rows();
  RatMatrix coeff(m - 1, t.cols());
  RatVector rhs(m - 1);
  int out = 0;
  for (int r = 0; r < m; ++r) {
    if (r == row) continue;
    coeff.row(out) = t.coeff.row(r);
    rhs(out) = t.rhs(r);
    ++out;
  }
  t.coeff = std::move(coeff);
  t.rhs = std::move(rhs);
  t.basis.erase(t.basis.begin() + row);
  t.orig_row.erase(t.orig_row.begin() + row);
}

// Phase 1: minimize the sum of artificials. Returns false when the program
// is infeasible; on success artificials are driven out of the basis and
// redundant rows dropped.
bool run_phase_one(Tableau& t) {
  if (t.num_artificial == 0) return true;
  RatVector cost = RatVector::Zero(t.cols());
  for (int j = t.num_structural + t.num_slack; j < t.cols(); ++j) cost(j) = 1;
  for (int r = 0; r < t.rows(); ++r) {
    if (!t.is_artificial(t.basis[static_cast<std::size_t>(r)])) continue;
    for (int c = 0; c < t.cols(); ++c) cost(c) -= t.coeff(r, c);
  }
  if (run_phase(t, cost) == PhaseOutcome::Unbounded) {
    throw std::logic_error("phase-1 objective unbounded");
  }
  Rational residual = 0;
  for (int r = 0; r < t.rows(); ++r) {
    if (t.is_artificial(t.basis[static_cast<std::size_t>(r)])) {
      residual += t.rhs(r);
    }
  }
  if (residual != 0) return false;

  for (int r = t.rows() - 1; r >= 0; --r) {
    if (!t.is_artificial(t.basis[static_cast<std::size_t>(r)])) continue;
    int enter = -1;
    for (int j = 0; j < t.num_structural + t.num_slack; ++j) {
      if (t.coeff(r, j) != 0) {
        enter = j;
        break;
      }
    }
    if (enter >= 0) {
      // Degenerate pivot at rhs 0: feasibility is unaffected even when the
      // pivot element is negative.
      pivot(t, nullptr, r, enter);
    } else {
      erase_row(t, r);
    }
  }
  return true;
}

// Witness assembly. The fast path reads the final basis: kept equality rows,
// kept <= rows whose slack is non-basic, and non-basic structural variables
// form exactly num_vars independent tight constraints whenever no row was
// dropped. Otherwise fall back to a greedy independent subset of all tight
// constraints, selected by exact elimination.
BasisWitness make_witness(const LinearProgram& lp, const Tableau& t,
                          const RatVector& values, bool rows_dropped) {
  const int n = lp.num_vars;
  std::vector<bool> basic(static_cast<std::size_t>(t.cols()), false);
  for (int b : t.basis) basic[static_cast<std::size_t>(b)] = true;
  std::vector<bool> kept(lp.rows.size(), false);
  for (int r : t.orig_row) kept[static_cast<std::size_t>(r)] = true;

  BasisWitness witness;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    if (!kept[r]) continue;
    const LinearRow& row = lp.rows[r];
    if (row.sense == RowSense::Eq) {
      witness.tight_rows.push_back(static_cast<int>(r));
    } else if (!basic[static_cast<std::size_t>(t.slack_col[r])]) {
      witness.tight_rows.push_back(static_cast<int>(r));
    }
  }
  for (int j = 0; j < n; ++j) {
    if (!basic[static_cast<std::size_t>(j)]) witness.tight_vars.push_back(j);
  }
  if (!rows_dropped &&
      static_cast<int>(witness.tight_rows.size() + witness.tight_vars.size()) ==
          n) {
    return witness;
  }

  // Greedy independent selection over every tight constraint at the point,
  // rows first, then zero variables.
  struct Candidate {
    bool is_row;
    int index;
  };
  std::vector<Candidate> candidates;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const LinearRow& row = lp.rows[r];
    Rational lhs = 0;
    for (const auto& [var, coeff] : row.coeffs) lhs += coeff * values(var);
    if (lhs == row.rhs) candidates.push_back({true, static_cast<int>(r)});
  }
  for (int j = 0; j < n; ++j) {
    if (values(j) == 0) candidates.push_back({false, j});
  }

  BasisWitness reduced;
  std::vector<RatVector> pivots;   // reduced normals kept so far
  std::vector<int> pivot_cols;
  for (const Candidate& cand : candidates) {
    if (static_cast<int>(pivots.size()) == n) break;
    RatVector normal = RatVector::Zero(n);
    if (cand.is_row) {
      for (const auto& [var, coeff] :
           lp.rows[static_cast<std::size_t>(cand.index)].coeffs) {
        normal(var) = coeff;
      }
    } else {
      normal(cand.index) = 1;
    }
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      Rational factor = normal(pivot_cols[p]);
      if (factor != 0) normal -= factor * pivots[p];
    }
    int col = -1;
    for (int c = 0; c < n; ++c) {
      if (normal(c) != 0) {
        col = c;
        break;
      }
    }
    if (col < 0) continue;
    if (normal(col) != 1) normal /= normal(col);
    pivots.push_back(std::move(normal));
    pivot_cols.push_back(col);
    if (cand.is_row) {
      reduced.tight_rows.push_back(cand.index);
    } else {
      reduced.tight_vars.push_back(cand.index);
    }
  }
  if (static_cast<int>(pivots.size()) != n) {
    throw std::logic_error("solver returned a non-basic point");
  }
  return reduced;
}

BasicSolution extract_solution(const LinearProgram& lp, const Tableau& t,
                               bool rows_dropped, bool with_objective) {
  RatVector values = RatVector::Zero(lp.num_vars);
  for (int r = 0; r < t.rows(); ++r) {
    int b = t.basis[static_cast<std::size_t>(r)];
    if (b < lp.num_vars) values(b) = t.rhs(r);
  }
  BasicSolution sol;
  sol.witness = make_witness(lp, t, values, rows_dropped);
  if (with_objective) {
    Rational objective = 0;
    for (const auto& [var, coeff] : lp.objective) {
      objective += coeff * values(var);
    }
    sol.objective_value = objective;
  }
  sol.values = std::move(values);
  return sol;
}

}  // namespace

SolveResult solve_feasible(const LinearProgram& lp) {
  validate_program(lp);
  Tableau t = build_tableau(lp);
  const int initial_rows = t.rows();
  if (!run_phase_one(t)) return {SolveStatus::Infeasible, std::nullopt};
  SolveResult result;
  result.status = SolveStatus::Feasible;
  result.solution =
      extract_solution(lp, t, t.rows() != initial_rows, /*with_objective=*/false);
  return result;
}

SolveResult solve_minimize(const LinearProgram& lp) {
  validate_program(lp);
  Tableau t = build_tableau(lp);
  const int initial_rows = t.rows();
  if (!run_phase_one(t)) return {SolveStatus::Infeasible, std::nullopt};

  RatVector cost = RatVector::Zero(t.cols());
  std::vector<Rational> original_cost(static_cast<std::size_t>(t.cols()), 0);
  for (const auto& [var, coeff] : lp.objective) {
    cost(var) = coeff;
    original_cost[static_cast<std::size_t>(var)] = coeff;
  }
  for (int r = 0; r < t.rows(); ++r) {
    const Rational& cb =
        original_cost[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(r)])];
    if (cb == 0) continue;
    for (int c = 0; c < t.cols(); ++c) cost(c) -= cb * t.coeff(r, c);
  }
  if (run_phase(t, cost) == PhaseOutcome::Unbounded) {
    return {SolveStatus::Unbounded, std::nullopt};
  }
  SolveResult result;
  result.status = SolveStatus::Optimal;
  result.solution =
      extract_solution(lp, t, t.rows() != initial_rows, /*with_objective=*/true);
  return result;
}

}  // namespace smcc
