#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "smcc/relaxations.hpp"

namespace smcc {

/// The three rounding moves. F fixes variables that are already integral and
/// leaves every budget untouched. G forces the longest free job onto a
/// machine with exactly one free slot and raises that machine's budget by the
/// job's length. H finishes: it hands out all remaining jobs, at most two per
/// machine, raising each receiving machine's budget by the lengths it takes.
enum class TransitionKind { F, G, H };

struct TransitionRecord {
  TransitionKind kind = TransitionKind::F;
  std::vector<std::pair<int, int>> pairs_fixed;  // (machine, job), 0-based
  std::map<int, Rational> budget_deltas;         // machine -> increase
  int iteration = 0;
};

/// Trace line: `iter=<n> kind=<F|G|H> fixed=(i,j)... db=(i:+delta)...` with
/// 1-based indices; the db field is omitted on F records.
std::string format_transition(const TransitionRecord& record);

/// Machine-checked record that the produced schedule respects the proven
/// bounds: makespan <= c* + 2 t_max <= 3 times the best lower bound.
struct Certificate {
  std::int64_t makespan = 0;
  Rational lb_lp;                      // exact relaxation optimum c*
  std::int64_t lb_longest_job = 0;     // t_max
  Rational lb_average;                 // total length / k
  bool b_increase_bound_ok = false;    // makespan <= c* + 2 t_max
  bool ratio_ok = false;               // makespan <= 3 * best lower bound

  Rational best_lower_bound() const;
};

struct RoundingResult {
  Schedule schedule;
  Rational c_star;
  RatVector initial_y;                  // relaxation loads, the starting budgets
  RatVector final_b;
  std::vector<TransitionRecord> trace;
  Certificate certificate;
};

/// All free pairs whose value is exactly 1, ordered by (machine, job).
std::vector<std::pair<int, int>> find_integral_pairs(
    const BlprState& state, const FractionalAssignment& x);

/// Fixes every listed pair at once; budgets are unchanged. Preconditions
/// (distinct free jobs, per-machine multiplicity within residual capacity)
/// are validated and violations throw std::invalid_argument.
BlprState f_transition(const BlprState& state,
                       const std::vector<std::pair<int, int>>& pairs);

/// The (p, q) choice of the G move: p is the lowest-index free machine with
/// residual capacity exactly 1, q the longest free job (ties to the lowest
/// index). Throws std::invalid_argument when the preconditions
/// (M* < 2k*, such a machine exists, a free job exists) fail.
std::pair<int, int> select_g_pair(const BlprState& state);

/// The mass-preserving exchange that reroutes all of job q onto machine p.
/// While some other machine still carries a fraction of q, either swap equal
/// fractions of q and of another of p's jobs between the two machines, or,
/// when p carries nothing but q, pull the fraction over directly. Column sums
/// are preserved exactly; no machine's load grows except p's, and p's grows
/// by at most t_q. Exposed separately so the conservation properties can be
/// fuzzed.
FractionalAssignment g_exchange(const BlprState& state, FractionalAssignment x,
                                int machine_p, int job_q);

/// Full G move: select (p, q), fix the pair, raise b_p by t_q. The exchanged
/// x is validated as a feasibility witness of the successor state; a failure
/// there is a broken proof obligation and throws InternalInvariantViolation.
BlprState g_transition(const BlprState& state, const FractionalAssignment& x);

/// Deterministic H policy: free jobs sorted by length descending (ties by
/// index), free machines ascending, each machine takes up to two jobs before
/// the next machine is used. Returns (machine, job) pairs.
std::vector<std::pair<int, int>> plan_h_assignment(const BlprState& state);

/// Applies the H policy; every receiving machine's budget grows by the exact
/// sum of lengths it takes. Identity when no free job remains.
BlprState h_transition(const BlprState& state);

struct IraObservation {
  int iteration;
  const BlprState& state;
  const FractionalAssignment& x;
  AuditReport audit;
};

struct IraOptions {
  enum class Audit { Always, Sampled, Off };
#ifdef NDEBUG
  Audit audit = Audit::Sampled;   // iterations 1, 9, 17, ...
#else
  Audit audit = Audit::Always;
#endif
  std::function<void(const IraObservation&)> observer;
};

/// The iterative rounding solver. Starts from the relaxation optimum (its
/// loads become the budgets), then repeats: solve the reduced program for a
/// basic point; if M* >= 2k* apply F to every integral pair found, else G if
/// some free machine has exactly one slot left, else H. Returns the feasible
/// schedule, the full trace and a certificate with ratio_ok = true.
/// Throws InternalInvariantViolation, with a state snapshot, if any step
/// contradicts the scheme's guarantees (no integral pair where one is
/// guaranteed, an infeasible reduced program, or a violated bound).
RoundingResult iterative_rounding(const Instance& instance);
RoundingResult iterative_rounding(const Instance& instance,
                                  const IraOptions& options);

}  // namespace smcc
