#include "smcc/oracles.hpp"

#include <algorithm>
#include <numeric>

namespace smcc {
namespace {

struct SearchContext {
  const Instance* instance;
  std::vector<int> order;              // job indices, descending length
  std::vector<std::int64_t> load;
  std::vector<std::int64_t> count;
  std::vector<int> partial;            // machine per order position
  std::vector<int> best_assignment;    // machine per order position
  std::int64_t incumbent;
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes;
  std::chrono::steady_clock::time_point deadline;
  bool out_of_budget = false;
};

void search(SearchContext& ctx, std::size_t depth,
            std::int64_t partial_makespan) {
  if (ctx.out_of_budget) return;
  if (++ctx.nodes > ctx.max_nodes) {
    ctx.out_of_budget = true;
    return;
  }
  if ((ctx.nodes & 1023) == 1 &&
      std::chrono::steady_clock::now() >= ctx.deadline) {
    ctx.out_of_budget = true;
    return;
  }
  if (partial_makespan >= ctx.incumbent) return;
  if (depth == ctx.order.size()) {
    ctx.incumbent = partial_makespan;
    ctx.best_assignment = ctx.partial;
    return;
  }
  const int job = ctx.order[depth];
  const std::int64_t len =
      ctx.instance->lengths[static_cast<std::size_t>(job)];
  const int k = ctx.instance->k;
  for (int i = 0; i < k; ++i) {
    const std::int64_t residual =
        ctx.instance->capacities[static_cast<std::size_t>(i)] -
        ctx.count[static_cast<std::size_t>(i)];
    if (residual <= 0) continue;
    if (ctx.load[static_cast<std::size_t>(i)] + len >= ctx.incumbent) continue;
    bool symmetric = false;
    for (int other = 0; other < i; ++other) {
      if (ctx.instance->capacities[static_cast<std::size_t>(other)] -
                  ctx.count[static_cast<std::size_t>(other)] ==
              residual &&
          ctx.load[static_cast<std::size_t>(other)] ==
              ctx.load[static_cast<std::size_t>(i)]) {
        symmetric = true;  // an identical machine was already branched on
        break;
      }
    }
    if (symmetric) continue;

    ctx.load[static_cast<std::size_t>(i)] += len;
    ctx.count[static_cast<std::size_t>(i)] += 1;
    ctx.partial[depth] = i;
    search(ctx, depth + 1,
           std::max(partial_makespan, ctx.load[static_cast<std::size_t>(i)]));
    ctx.load[static_cast<std::size_t>(i)] -= len;
    ctx.count[static_cast<std::size_t>(i)] -= 1;
    if (ctx.out_of_budget) return;
  }
}

std::vector<int> jobs_descending(const Instance& instance) {
  std::vector<int> order(static_cast<std::size_t>(instance.num_jobs()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.lengths[static_cast<std::size_t>(a)] >
           instance.lengths[static_cast<std::size_t>(b)];
  });
  return order;
}

}  // namespace

BruteForceOutcome brute_force_opt(const Instance& instance,
                                  const BruteForceLimits& limits) {
  BruteForceOutcome outcome;
  Schedule greedy = greedy_lpt_capacity(instance);

  SearchContext ctx;
  ctx.instance = &instance;
  ctx.order = jobs_descending(instance);
  ctx.load.assign(static_cast<std::size_t>(instance.k), 0);
  ctx.count.assign(static_cast<std::size_t>(instance.k), 0);
  ctx.partial.assign(ctx.order.size(), -1);
  ctx.best_assignment.clear();
  ctx.incumbent = makespan(instance, greedy);
  ctx.max_nodes = limits.max_states;
  ctx.deadline = std::chrono::steady_clock::now() + limits.time_budget;

  search(ctx, 0, 0);
  outcome.nodes = ctx.nodes;
  if (ctx.out_of_budget) {
    outcome.determinate = false;
    return outcome;
  }
  outcome.determinate = true;
  outcome.opt = ctx.incumbent;
  if (ctx.best_assignment.empty()) {
    outcome.schedule = std::move(greedy);  // greedy was already optimal
  } else {
    outcome.schedule.assignment.assign(
        static_cast<std::size_t>(instance.num_jobs()), -1);
    for (std::size_t pos = 0; pos < ctx.order.size(); ++pos) {
      outcome.schedule.assignment[static_cast<std::size_t>(ctx.order[pos])] =
          ctx.best_assignment[pos];
    }
  }
  return outcome;
}

Schedule greedy_lpt_capacity(const Instance& instance) {
  Schedule schedule;
  schedule.assignment.assign(static_cast<std::size_t>(instance.num_jobs()),
                             -1);
  std::vector<std::int64_t> load(static_cast<std::size_t>(instance.k), 0);
  std::vector<std::int64_t> count(static_cast<std::size_t>(instance.k), 0);
  for (int job : jobs_descending(instance)) {
    int best = -1;
    for (int i = 0; i < instance.k; ++i) {
      if (count[static_cast<std::size_t>(i)] >=
          instance.capacities[static_cast<std::size_t>(i)]) {
        continue;
      }
      if (best < 0 || load[static_cast<std::size_t>(i)] <
                          load[static_cast<std::size_t>(best)]) {
        best = i;
      }
    }
    schedule.assignment[static_cast<std::size_t>(job)] = best;
    load[static_cast<std::size_t>(best)] +=
        instance.lengths[static_cast<std::size_t>(job)];
    count[static_cast<std::size_t>(best)] += 1;
  }
  return schedule;
}

Rational LowerBounds::best() const {
  Rational best_bound = lp;
  if (Rational(static_cast<long>(longest_job)) > best_bound) {
    best_bound = Rational(static_cast<long>(longest_job));
  }
  if (average > best_bound) best_bound = average;
  return best_bound;
}

LowerBounds lower_bounds(const Instance& instance, const Rational& c_star) {
  LowerBounds bounds;
  bounds.lp = c_star;
  bounds.longest_job = instance.max_length();
  bounds.average = Rational(static_cast<long>(instance.total_length())) /
                   Rational(static_cast<long>(instance.k));
  return bounds;
}

}  // namespace smcc
