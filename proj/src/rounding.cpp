#include "smcc/rounding.hpp"

#include <algorithm>
#include <sstream>

namespace smcc {
namespace {

Rational length_of(const BlprState& state, int job) {
  return Rational(static_cast<long>(
      state.instance.lengths[static_cast<std::size_t>(job)]));
}

BlprState with_fixed(const BlprState& state,
                     const std::vector<std::pair<int, int>>& pairs,
                     const std::map<int, Rational>& budget_deltas) {
  std::set<std::pair<int, int>> fixed = state.fixed;
  for (const auto& pair : pairs) {
    if (!fixed.insert(pair).second) {
      throw std::invalid_argument("pair fixed twice");
    }
  }
  RatVector budget = state.budget;
  for (const auto& [machine, delta] : budget_deltas) budget(machine) += delta;
  return make_blpr_state(state.instance, std::move(budget), std::move(fixed));
}

}  // namespace

std::string format_transition(const TransitionRecord& record) {
  std::ostringstream out;
  out << "iter=" << record.iteration << " kind=";
  switch (record.kind) {
    case TransitionKind::F: out << 'F'; break;
    case TransitionKind::G: out << 'G'; break;
    case TransitionKind::H: out << 'H'; break;
  }
  out << " fixed=";
  for (const auto& [machine, job] : record.pairs_fixed) {
    out << '(' << machine + 1 << ',' << job + 1 << ')';
  }
  if (!record.budget_deltas.empty()) {
    out << " db=";
    for (const auto& [machine, delta] : record.budget_deltas) {
      out << '(' << machine + 1 << ":+" << to_fraction_string(delta) << ')';
    }
  }
  return out.str();
}

Rational Certificate::best_lower_bound() const {
  Rational best = lb_lp;
  if (Rational(static_cast<long>(lb_longest_job)) > best) {
    best = Rational(static_cast<long>(lb_longest_job));
  }
  if (lb_average > best) best = lb_average;
  return best;
}

std::vector<std::pair<int, int>> find_integral_pairs(
    const BlprState& state, const FractionalAssignment& x) {
  (void)state;
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [pair, v] : x.entries) {
    if (v == 1) pairs.push_back(pair);
  }
  return pairs;  // map order is already (machine, job) ascending
}

BlprState f_transition(const BlprState& state,
                       const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.empty()) {
    throw std::invalid_argument("F move needs at least one pair");
  }
  std::set<int> jobs_seen;
  std::map<int, int> per_machine;
  for (const auto& [machine, job] : pairs) {
    if (std::find(state.free_machines.begin(), state.free_machines.end(),
                  machine) == state.free_machines.end()) {
      throw std::invalid_argument("F move targets a non-free machine");
    }
    if (state.job_fixed_to[static_cast<std::size_t>(job)] != -1) {
      throw std::invalid_argument("F move targets an already fixed job");
    }
    if (!jobs_seen.insert(job).second) {
      throw std::invalid_argument("F move fixes a job twice");
    }
    per_machine[machine] += 1;
  }
  for (const auto& [machine, count] : per_machine) {
    if (count > state.residual_capacity(machine)) {
      throw std::invalid_argument("F move overfills machine " +
                                  std::to_string(machine + 1));
    }
  }
  return with_fixed(state, pairs, {});
}

std::pair<int, int> select_g_pair(const BlprState& state) {
  if (state.num_free_jobs >= 2 * state.num_free_machines) {
    throw std::invalid_argument("G move requires M* < 2k*");
  }
  if (state.num_free_jobs == 0) {
    throw std::invalid_argument("G move requires a free job");
  }
  int machine_p = -1;
  for (int machine : state.free_machines) {
    if (state.residual_capacity(machine) == 1) {
      machine_p = machine;
      break;
    }
  }
  if (machine_p < 0) {
    throw std::invalid_argument(
        "G move requires a free machine with residual capacity 1");
  }
  int job_q = state.free_jobs.front();
  for (int job : state.free_jobs) {
    if (state.instance.lengths[static_cast<std::size_t>(job)] >
        state.instance.lengths[static_cast<std::size_t>(job_q)]) {
      job_q = job;
    }
  }
  return {machine_p, job_q};
}

FractionalAssignment g_exchange(const BlprState& state, FractionalAssignment x,
                                int machine_p, int job_q) {
  for (;;) {
    int other_machine = -1;
    for (int machine : state.free_machines) {
      if (machine != machine_p && x.value(machine, job_q) > 0) {
        other_machine = machine;
        break;
      }
    }
    if (other_machine < 0) break;

    int other_job = -1;
    for (int job : state.free_jobs) {
      if (job != job_q && x.value(machine_p, job) > 0) {
        other_job = job;
        break;
      }
    }
    if (other_job >= 0) {
      // Swap alpha of job q (other_machine -> p) against alpha of other_job
      // (p -> other_machine); both column sums are untouched.
      Rational alpha = std::min(x.value(other_machine, job_q),
                                x.value(machine_p, other_job));
      x.set(other_machine, job_q, x.value(other_machine, job_q) - alpha);
      x.set(machine_p, job_q, x.value(machine_p, job_q) + alpha);
      x.set(machine_p, other_job, x.value(machine_p, other_job) - alpha);
      x.set(other_machine, other_job,
            x.value(other_machine, other_job) + alpha);
    } else {
      // p carries nothing but q: pull the remaining fraction over directly.
      x.set(machine_p, job_q,
            x.value(machine_p, job_q) + x.value(other_machine, job_q));
      x.set(other_machine, job_q, Rational(0));
    }
  }
  return x;
}

BlprState g_transition(const BlprState& state, const FractionalAssignment& x) {
  const auto [machine_p, job_q] = select_g_pair(state);
  FractionalAssignment witness = g_exchange(state, x, machine_p, job_q);
  if (witness.value(machine_p, job_q) != 1) {
    throw InternalInvariantViolation(
        "G exchange did not make the chosen pair integral", dump_state(state));
  }
  BlprState next = with_fixed(state, {{machine_p, job_q}},
                              {{machine_p, length_of(state, job_q)}});
  witness.set(machine_p, job_q, Rational(0));  // fixed in the successor
  std::vector<std::string> findings = validate_assignment(next, witness);
  if (!findings.empty()) {
    throw InternalInvariantViolation(
        "G exchange produced an infeasible witness: " + findings.front(),
        dump_state(state));
  }
  return next;
}

std::vector<std::pair<int, int>> plan_h_assignment(const BlprState& state) {
  std::vector<int> jobs = state.free_jobs;
  std::stable_sort(jobs.begin(), jobs.end(), [&](int a, int b) {
    return state.instance.lengths[static_cast<std::size_t>(a)] >
           state.instance.lengths[static_cast<std::size_t>(b)];
  });
  std::vector<std::pair<int, int>> pairs;
  std::size_t next_job = 0;
  for (int machine : state.free_machines) {
    for (int slot = 0; slot < 2 && next_job < jobs.size(); ++slot) {
      pairs.emplace_back(machine, jobs[next_job++]);
    }
  }
  if (next_job != jobs.size()) {
    throw std::invalid_argument("H move cannot place every free job");
  }
  return pairs;
}

BlprState h_transition(const BlprState& state) {
  if (state.num_free_jobs == 0) return state;
  if (state.num_free_jobs >= 2 * state.num_free_machines) {
    throw std::invalid_argument("H move requires M* < 2k*");
  }
  for (int machine : state.free_machines) {
    if (state.residual_capacity(machine) < 2) {
      throw std::invalid_argument(
          "H move requires residual capacity >= 2 on every free machine");
    }
  }
  std::vector<std::pair<int, int>> pairs = plan_h_assignment(state);
  std::map<int, Rational> deltas;
  for (const auto& [machine, job] : pairs) {
    deltas[machine] += length_of(state, job);
  }
  return with_fixed(state, pairs, deltas);
}

RoundingResult iterative_rounding(const Instance& instance) {
  return iterative_rounding(instance, IraOptions{});
}

RoundingResult iterative_rounding(const Instance& instance,
                                  const IraOptions& options) {
  LprSolution relaxed = solve_lpr(instance);
  BlprState state = make_blpr_state(instance, relaxed.loads, {});

  RoundingResult result;
  result.c_star = relaxed.c_star;
  result.initial_y = relaxed.loads;

  std::vector<int> budget_increases(static_cast<std::size_t>(instance.k), 0);
  int iteration = 0;
  while (state.num_free_jobs > 0) {
    ++iteration;
    const int prev_free_jobs = state.num_free_jobs;
    FractionalAssignment x = solve_blpr_basic(state);

    const bool audit_now =
        options.audit == IraOptions::Audit::Always ||
        (options.audit == IraOptions::Audit::Sampled && iteration % 8 == 1);
    if (audit_now) {
      IraObservation obs{iteration, state, x, audit_structure(state, x)};
      if (options.observer) options.observer(obs);
    }

    TransitionRecord record;
    record.iteration = iteration;
    if (state.num_free_jobs >= 2 * state.num_free_machines) {
      record.kind = TransitionKind::F;
      record.pairs_fixed = find_integral_pairs(state, x);
      if (record.pairs_fixed.empty()) {
        throw InternalInvariantViolation(
            "no integral variable in a basic solution with M* >= 2k*",
            dump_state(state));
      }
      state = f_transition(state, record.pairs_fixed);
    } else {
      bool has_capacity_one_machine = false;
      for (int machine : state.free_machines) {
        if (state.residual_capacity(machine) == 1) {
          has_capacity_one_machine = true;
          break;
        }
      }
      if (has_capacity_one_machine) {
        record.kind = TransitionKind::G;
        const auto [machine_p, job_q] = select_g_pair(state);
        record.pairs_fixed = {{machine_p, job_q}};
        record.budget_deltas = {{machine_p, length_of(state, job_q)}};
        state = g_transition(state, x);
        budget_increases[static_cast<std::size_t>(machine_p)] += 1;
      } else {
        record.kind = TransitionKind::H;
        record.pairs_fixed = plan_h_assignment(state);
        std::sort(record.pairs_fixed.begin(), record.pairs_fixed.end());
        for (const auto& [machine, job] : record.pairs_fixed) {
          record.budget_deltas[machine] += length_of(state, job);
        }
        state = h_transition(state);
        for (const auto& [machine, delta] : record.budget_deltas) {
          (void)delta;
          budget_increases[static_cast<std::size_t>(machine)] += 1;
        }
      }
    }
    result.trace.push_back(std::move(record));
    if (state.num_free_jobs >= prev_free_jobs) {
      throw InternalInvariantViolation("iteration made no progress",
                                       dump_state(state));
    }
  }

  for (int count : budget_increases) {
    if (count > 1) {
      throw InternalInvariantViolation(
          "a machine's budget was raised more than once", dump_state(state));
    }
  }

  result.final_b = state.budget;
  result.schedule.assignment.assign(state.job_fixed_to.begin(),
                                    state.job_fixed_to.end());
  ScheduleReport report = verify_schedule(instance, result.schedule);
  if (!report.feasible) {
    throw InternalInvariantViolation(
        "rounded schedule is infeasible: " + report.violations.front(),
        dump_state(state));
  }
  for (int i = 0; i < instance.k; ++i) {
    if (Rational(static_cast<long>(
            report.per_machine_load[static_cast<std::size_t>(i)])) >
        state.budget(i)) {
      throw InternalInvariantViolation(
          "final load exceeds budget on machine " + std::to_string(i + 1),
          dump_state(state));
    }
  }

  Certificate cert;
  cert.makespan = report.makespan;
  cert.lb_lp = relaxed.c_star;
  cert.lb_longest_job = instance.max_length();
  cert.lb_average = Rational(static_cast<long>(instance.total_length())) /
                    Rational(static_cast<long>(instance.k));
  Rational makespan_rational(static_cast<long>(cert.makespan));
  cert.b_increase_bound_ok =
      makespan_rational <=
      cert.lb_lp + 2 * Rational(static_cast<long>(cert.lb_longest_job));
  cert.ratio_ok = makespan_rational <= 3 * cert.best_lower_bound();
  if (!cert.b_increase_bound_ok || !cert.ratio_ok) {
    throw InternalInvariantViolation("certified bound violated",
                                     dump_state(state));
  }
  result.certificate = std::move(cert);
  return result;
}

}  // namespace smcc
