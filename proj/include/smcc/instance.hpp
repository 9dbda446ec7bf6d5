#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "smcc/errors.hpp"

namespace smcc {

/// A scheduling instance: k identical machines, machine i accepting at most
/// capacities[i] jobs, and one integer processing length per job. Immutable
/// value data after construction; indices are 0-based internally and 1-based
/// in every file format and message.
struct Instance {
  int k = 0;
  std::vector<std::int64_t> capacities;  // size k, each >= 1
  std::vector<std::int64_t> lengths;     // size M, each >= 0

  int num_jobs() const { return static_cast<int>(lengths.size()); }
  std::int64_t total_capacity() const;
  std::int64_t total_length() const;
  std::int64_t max_length() const;  // 0 when there are no jobs
};

/// Validates the invariants (k >= 1, capacities >= 1, lengths >= 0,
/// M <= total capacity) and returns the instance. Throws std::invalid_argument
/// naming the violated constraint.
Instance make_instance(int k, std::vector<std::int64_t> capacities,
                       std::vector<std::int64_t> lengths);

/// Instance file format: `k M` on the first line, k capacities on the second,
/// M lengths on the third. Tokens are whitespace-separated; lines whose first
/// non-blank character is '#' are comments. Throws ParseError (syntax) or
/// std::invalid_argument (violated invariant).
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

/// A total assignment of jobs to machines, stored 0-based.
struct Schedule {
  std::vector<int> assignment;  // position j holds the machine of job j
};

/// Schedule file format: one line of M 1-based machine indices.
Schedule parse_schedule(std::string_view text, int expected_jobs);
std::string serialize_schedule(const Schedule& schedule);

/// Max over machines of the summed assigned lengths; idle machines count 0.
/// Throws std::invalid_argument on job-count mismatch or an out-of-range
/// machine index.
std::int64_t makespan(const Instance& instance, const Schedule& schedule);

struct ScheduleReport {
  bool feasible = false;
  std::int64_t makespan = 0;
  std::vector<std::int64_t> per_machine_load;
  std::vector<std::int64_t> per_machine_count;
  std::vector<std::string> violations;  // every violation, not only the first
};

/// Checks totality and the per-machine capacity constraints. Never throws;
/// all findings are reported in the violations list.
ScheduleReport verify_schedule(const Instance& instance,
                               const Schedule& schedule);

struct GenParams {
  int k = 1;
  int jobs = 1;
  std::int64_t cap_min = 1;
  std::int64_t cap_max = 1;
  std::int64_t len_min = 0;
  std::int64_t len_max = 0;
  std::uint64_t seed = 0;
};

/// Deterministic instance generator. PRNG: std::mt19937_64 seeded with
/// `seed`; bounded draws use mask-and-reject sampling (see README), so the
/// same arguments reproduce the same instance on every platform. Capacities
/// are drawn first (k draws), then lengths (`jobs` draws). If the drawn
/// capacities sum below `jobs`, capacities below cap_max are incremented
/// round-robin from machine 1 until the total reaches `jobs`; the increments
/// consume no randomness. Throws std::invalid_argument when the parameters
/// are impossible (jobs > k * cap_max) or a range is empty.
Instance generate_instance(const GenParams& params);

}  // namespace smcc
