#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "smcc/instance.hpp"
#include "smcc/rational.hpp"

namespace smcc {

struct BruteForceLimits {
  std::uint64_t max_states = 1'000'000;       // search-node budget
  std::chrono::milliseconds time_budget{10'000};
};

/// Exceeding a budget is reported explicitly; the oracle never returns a
/// value it has not proven optimal.
struct BruteForceOutcome {
  bool determinate = false;
  std::int64_t opt = 0;
  Schedule schedule;
  std::uint64_t nodes = 0;
};

/// Exact optimum by depth-first branch and bound: jobs in descending length
/// order, capacity-violating branches pruned, branches whose partial makespan
/// reaches the incumbent pruned, and machines that agree on (residual
/// capacity, current load) treated as interchangeable. The incumbent starts
/// from the greedy schedule, so a determinate outcome always carries a
/// witness schedule.
BruteForceOutcome brute_force_opt(const Instance& instance,
                                  const BruteForceLimits& limits);

/// Capacity-aware longest-processing-time baseline: jobs descending by
/// length, each to the least-loaded machine that still has a free slot (ties
/// to the lowest index). Always feasible since M <= total capacity.
Schedule greedy_lpt_capacity(const Instance& instance);

/// The three lower bounds on the optimal makespan used by certificates:
/// the relaxation optimum, the longest job, and total length over k.
struct LowerBounds {
  Rational lp;
  std::int64_t longest_job = 0;
  Rational average;

  Rational best() const;
};

LowerBounds lower_bounds(const Instance& instance, const Rational& c_star);

}  // namespace smcc
