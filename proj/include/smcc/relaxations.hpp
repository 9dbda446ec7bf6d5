#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "smcc/instance.hpp"
#include "smcc/linear_program.hpp"

namespace smcc {

/// Rounding state: the instance, the per-machine load budgets b, and the set
/// of already-fixed (machine, job) pairs. Derived views (fixed counts and
/// loads, free machines and jobs) are computed at construction; treat the
/// whole struct as immutable and build successors through the transition
/// functions.
struct BlprState {
  Instance instance;
  RatVector budget;                       // b, size k
  std::set<std::pair<int, int>> fixed;    // (machine, job), 0-based

  std::vector<int> fixed_count;           // jobs fixed on machine i
  std::vector<std::int64_t> fixed_load;   // length fixed on machine i
  std::vector<int> job_fixed_to;          // machine of job j, or -1
  std::vector<int> free_machines;         // residual capacity > 0, ascending
  std::vector<int> free_jobs;             // ascending
  int num_free_jobs = 0;                  // M*
  int num_free_machines = 0;              // k*

  std::int64_t residual_capacity(int machine) const {
    return instance.capacities[static_cast<std::size_t>(machine)] -
           fixed_count[static_cast<std::size_t>(machine)];
  }
};

/// Validates and derives. Invariants: every job in at most one pair, fixed
/// counts within capacities, fixed load within budget on every machine, and
/// enough residual capacity for the free jobs. Violations throw
/// std::invalid_argument.
BlprState make_blpr_state(Instance instance, RatVector budget,
                          std::set<std::pair<int, int>> fixed);

/// Line-oriented snapshot used in error payloads and bug reports.
std::string dump_state(const BlprState& state);

/// Sparse fractional assignment over free (machine, job) pairs; absent
/// entries are zero. Values are exact rationals in [0, 1].
struct FractionalAssignment {
  std::map<std::pair<int, int>, Rational> entries;

  Rational value(int machine, int job) const {
    auto it = entries.find({machine, job});
    return it == entries.end() ? Rational(0) : it->second;
  }
  void set(int machine, int job, const Rational& v) {
    if (v == 0) {
      entries.erase({machine, job});
    } else {
      entries[{machine, job}] = v;
    }
  }
};

/// Exact feasibility check of x against the state: entries confined to free
/// pairs and [0, 1], every free job's column summing to exactly 1, and every
/// free machine within residual capacity and budget. Returns all findings.
std::vector<std::string> validate_assignment(const BlprState& state,
                                             const FractionalAssignment& x);

/// Bipartite graph of strictly positive fractional entries.
struct SupportingGraph {
  std::vector<int> machines;                  // left side: free machines
  std::vector<int> jobs;                      // right side: free jobs
  std::vector<std::pair<int, int>> edges;     // x > 0, sorted
};

SupportingGraph supporting_graph(const BlprState& state,
                                 const FractionalAssignment& x);

/// Structural facts about a basic solution: the edge-count bound
/// |E| <= M* + 2k* - 1 always, and, when M* >= 2k*, the guaranteed count of
/// variables exactly equal to 1. Failures are recorded, never thrown; the
/// caller decides how to react.
struct AuditReport {
  int num_free_jobs = 0;
  int num_free_machines = 0;
  std::size_t edge_count = 0;
  int ones_count = 0;
  bool edge_bound_ok = true;
  bool ones_bound_applies = false;
  bool ones_bound_ok = true;

  std::int64_t edge_bound() const {
    return static_cast<std::int64_t>(num_free_jobs) +
           2 * static_cast<std::int64_t>(num_free_machines) - 1;
  }
  bool pass() const { return edge_bound_ok && ones_bound_ok; }
  std::string to_line() const;
};

AuditReport audit_structure(const BlprState& state,
                            const FractionalAssignment& x);

/// Full relaxation of an instance: variables x(i,j) for every machine/job
/// pair plus the makespan variable c (index k*M); k load rows, k capacity
/// rows, M assignment equalities; objective minimize c.
LinearProgram build_lpr(const Instance& instance);

struct LprSolution {
  Rational c_star;           // exact LP optimum
  RatVector loads;           // per-machine fractional load, size k
  FractionalAssignment x;    // basic optimal assignment
};

/// Solves the relaxation to a basic optimum. A valid instance is always
/// feasible, so a solver failure here throws InternalInvariantViolation.
LprSolution solve_lpr(const Instance& instance);

/// Reduced feasibility program over free machines x free jobs only; fixed
/// variables are folded into the right-hand sides (capacity rhs m_i - c_i,
/// load rhs b_i - fixed_load_i). No objective. Variable order is
/// blpr_variable_pairs.
LinearProgram build_blpr(const BlprState& state);

/// Column order of build_blpr: free machines ascending, free jobs ascending
/// within each machine.
std::vector<std::pair<int, int>> blpr_variable_pairs(const BlprState& state);

/// Basic feasible solution of the reduced program. Infeasibility signals a
/// broken caller invariant and throws InternalInvariantViolation carrying the
/// state snapshot.
FractionalAssignment solve_blpr_basic(const BlprState& state);

}  // namespace smcc
