#include "smcc/relaxations.hpp"

#include <sstream>

#include "smcc/simplex.hpp"

namespace smcc {

BlprState make_blpr_state(Instance instance, RatVector budget,
                          std::set<std::pair<int, int>> fixed) {
  const int k = instance.k;
  const int jobs = instance.num_jobs();
  if (budget.size() != k) {
    throw std::invalid_argument("budget vector must have one entry per machine");
  }

  BlprState state;
  state.instance = std::move(instance);
  state.budget = std::move(budget);
  state.fixed = std::move(fixed);
  state.fixed_count.assign(static_cast<std::size_t>(k), 0);
  state.fixed_load.assign(static_cast<std::size_t>(k), 0);
  state.job_fixed_to.assign(static_cast<std::size_t>(jobs), -1);

  for (const auto& [machine, job] : state.fixed) {
    if (machine < 0 || machine >= k || job < 0 || job >= jobs) {
      throw std::invalid_argument("fixed pair out of range");
    }
    if (state.job_fixed_to[static_cast<std::size_t>(job)] != -1) {
      throw std::invalid_argument("job " + std::to_string(job + 1) +
                                  " fixed to more than one machine");
    }
    state.job_fixed_to[static_cast<std::size_t>(job)] = machine;
    state.fixed_count[static_cast<std::size_t>(machine)] += 1;
    state.fixed_load[static_cast<std::size_t>(machine)] +=
        state.instance.lengths[static_cast<std::size_t>(job)];
  }

  std::int64_t residual_total = 0;
  for (int i = 0; i < k; ++i) {
    if (state.fixed_count[static_cast<std::size_t>(i)] >
        state.instance.capacities[static_cast<std::size_t>(i)]) {
      throw std::invalid_argument("machine " + std::to_string(i + 1) +
                                  " holds more fixed jobs than its capacity");
    }
    if (Rational(static_cast<long>(state.fixed_load[static_cast<std::size_t>(i)])) >
        state.budget(i)) {
      throw std::invalid_argument("machine " + std::to_string(i + 1) +
                                  " has fixed load above its budget");
    }
    if (state.residual_capacity(i) > 0) {
      state.free_machines.push_back(i);
      residual_total += state.residual_capacity(i);
    }
  }
  for (int j = 0; j < jobs; ++j) {
    if (state.job_fixed_to[static_cast<std::size_t>(j)] == -1) {
      state.free_jobs.push_back(j);
    }
  }
  state.num_free_jobs = static_cast<int>(state.free_jobs.size());
  state.num_free_machines = static_cast<int>(state.free_machines.size());
  if (residual_total < state.num_free_jobs) {
    throw std::invalid_argument(
        "free jobs exceed residual capacity: no completion exists");
  }
  return state;
}

std::string dump_state(const BlprState& state) {
  std::ostringstream out;
  out << "state k=" << state.instance.k << " M=" << state.instance.num_jobs()
      << " free_jobs=" << state.num_free_jobs
      << " free_machines=" << state.num_free_machines << '\n';
  out << "caps";
  for (auto c : state.instance.capacities) out << ' ' << c;
  out << '\n' << "lengths";
  for (auto t : state.instance.lengths) out << ' ' << t;
  out << '\n' << "budget";
  for (int i = 0; i < state.instance.k; ++i) {
    out << ' ' << to_fraction_string(state.budget(i));
  }
  out << '\n' << "fixed";
  for (const auto& [machine, job] : state.fixed) {
    out << " (" << machine + 1 << ',' << job + 1 << ')';
  }
  out << '\n';
  return out.str();
}

std::vector<std::string> validate_assignment(const BlprState& state,
                                             const FractionalAssignment& x) {
  std::vector<std::string> findings;
  std::map<int, Rational> column_sum;
  std::map<int, Rational> row_count;
  std::map<int, Rational> row_load;

  std::set<int> free_machine_set(state.free_machines.begin(),
                                 state.free_machines.end());
  std::set<int> free_job_set(state.free_jobs.begin(), state.free_jobs.end());

  for (const auto& [pair, v] : x.entries) {
    const auto [machine, job] = pair;
    if (!free_machine_set.count(machine) || !free_job_set.count(job)) {
      findings.push_back("entry (" + std::to_string(machine + 1) + "," +
                         std::to_string(job + 1) + ") is not a free pair");
      continue;
    }
    if (v < 0 || v > 1) {
      findings.push_back("entry (" + std::to_string(machine + 1) + "," +
                         std::to_string(job + 1) + ") outside [0,1]: " +
                         to_fraction_string(v));
    }
    column_sum[job] += v;
    row_count[machine] += v;
    row_load[machine] +=
        v * Rational(static_cast<long>(
                state.instance.lengths[static_cast<std::size_t>(job)]));
  }
  for (int job : state.free_jobs) {
    if (column_sum[job] != 1) {
      findings.push_back("job " + std::to_string(job + 1) +
                         " column sums to " +
                         to_fraction_string(column_sum[job]) + ", not 1");
    }
  }
  for (int machine : state.free_machines) {
    Rational residual(static_cast<long>(state.residual_capacity(machine)));
    if (row_count[machine] > residual) {
      findings.push_back("machine " + std::to_string(machine + 1) +
                         " count-sum " +
                         to_fraction_string(row_count[machine]) +
                         " exceeds residual capacity " +
                         to_fraction_string(residual));
    }
    Rational total_load =
        Rational(static_cast<long>(
            state.fixed_load[static_cast<std::size_t>(machine)])) +
        row_load[machine];
    if (total_load > state.budget(machine)) {
      findings.push_back("machine " + std::to_string(machine + 1) + " load " +
                         to_fraction_string(total_load) + " exceeds budget " +
                         to_fraction_string(state.budget(machine)));
    }
  }
  return findings;
}

SupportingGraph supporting_graph(const BlprState& state,
                                 const FractionalAssignment& x) {
  SupportingGraph graph;
  graph.machines = state.free_machines;
  graph.jobs = state.free_jobs;
  for (const auto& [pair, v] : x.entries) {
    if (v > 0) graph.edges.push_back(pair);
  }
  return graph;
}

std::string AuditReport::to_line() const {
  std::ostringstream out;
  out << "m_star=" << num_free_jobs << " k_star=" << num_free_machines
      << " edges=" << edge_count << " ones=" << ones_count << " edge_bound=";
  if (num_free_jobs == 0) {
    out << "n/a";
  } else {
    out << (edge_bound_ok ? "ok" : "FAIL");
  }
  out << " ones_bound=";
  if (!ones_bound_applies) {
    out << "n/a";
  } else {
    out << (ones_bound_ok ? "ok" : "FAIL");
  }
  return out.str();
}

AuditReport audit_structure(const BlprState& state,
                            const FractionalAssignment& x) {
  AuditReport report;
  report.num_free_jobs = state.num_free_jobs;
  report.num_free_machines = state.num_free_machines;
  for (const auto& [pair, v] : x.entries) {
    (void)pair;
    if (v > 0) ++report.edge_count;
    if (v == 1) ++report.ones_count;
  }
  if (report.num_free_jobs > 0) {
    report.edge_bound_ok =
        static_cast<std::int64_t>(report.edge_count) <= report.edge_bound();
    report.ones_bound_applies =
        report.num_free_jobs >= 2 * report.num_free_machines;
    if (report.ones_bound_applies) {
      report.ones_bound_ok =
          report.ones_count >=
          report.num_free_jobs - 2 * report.num_free_machines + 1;
    }
  }
  return report;
}

LinearProgram build_lpr(const Instance& instance) {
  const int k = instance.k;
  const int jobs = instance.num_jobs();
  const int c_var = k * jobs;

  LinearProgram lp;
  lp.num_vars = k * jobs + 1;
  auto var = [jobs](int machine, int job) { return machine * jobs + job; };

  for (int i = 0; i < k; ++i) {  // load rows: sum_j t_j x_ij - c <= 0
    LinearRow row;
    for (int j = 0; j < jobs; ++j) {
      if (instance.lengths[static_cast<std::size_t>(j)] != 0) {
        row.coeffs[var(i, j)] = Rational(
            static_cast<long>(instance.lengths[static_cast<std::size_t>(j)]));
      }
    }
    row.coeffs[c_var] = -1;
    row.sense = RowSense::LessEq;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }
  for (int i = 0; i < k; ++i) {  // capacity rows: sum_j x_ij <= m_i
    LinearRow row;
    for (int j = 0; j < jobs; ++j) row.coeffs[var(i, j)] = 1;
    row.sense = RowSense::LessEq;
    row.rhs = Rational(
        static_cast<long>(instance.capacities[static_cast<std::size_t>(i)]));
    lp.rows.push_back(std::move(row));
  }
  for (int j = 0; j < jobs; ++j) {  // assignment rows: sum_i x_ij = 1
    LinearRow row;
    for (int i = 0; i < k; ++i) row.coeffs[var(i, j)] = 1;
    row.sense = RowSense::Eq;
    row.rhs = 1;
    lp.rows.push_back(std::move(row));
  }
  lp.objective[c_var] = 1;
  return lp;
}

LprSolution solve_lpr(const Instance& instance) {
  LinearProgram lp = build_lpr(instance);
  SolveResult result = solve_minimize(lp);
  if (result.status != SolveStatus::Optimal) {
    throw InternalInvariantViolation(
        "relaxation of a valid instance failed to solve");
  }
  const BasicSolution& sol = *result.solution;
  const int jobs = instance.num_jobs();

  LprSolution out;
  out.c_star = *sol.objective_value;
  out.loads = RatVector::Zero(instance.k);
  for (int i = 0; i < instance.k; ++i) {
    for (int j = 0; j < jobs; ++j) {
      const Rational& v = sol.values(i * jobs + j);
      if (v != 0) {
        out.x.set(i, j, v);
        out.loads(i) +=
            v * Rational(static_cast<long>(
                    instance.lengths[static_cast<std::size_t>(j)]));
      }
    }
  }
  return out;
}

std::vector<std::pair<int, int>> blpr_variable_pairs(const BlprState& state) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(state.num_free_machines) *
                static_cast<std::size_t>(state.num_free_jobs));
  for (int machine : state.free_machines) {
    for (int job : state.free_jobs) pairs.emplace_back(machine, job);
  }
  return pairs;
}

LinearProgram build_blpr(const BlprState& state) {
  LinearProgram lp;
  if (state.num_free_jobs == 0) return lp;  // empty, trivially feasible

  const int free_jobs = state.num_free_jobs;
  const int free_machines = state.num_free_machines;
  lp.num_vars = free_machines * free_jobs;
  auto var = [free_jobs](int machine_pos, int job_pos) {
    return machine_pos * free_jobs + job_pos;
  };

  for (int mi = 0; mi < free_machines; ++mi) {  // load rows
    const int machine = state.free_machines[static_cast<std::size_t>(mi)];
    LinearRow row;
    for (int ji = 0; ji < free_jobs; ++ji) {
      const std::int64_t len =
          state.instance.lengths[static_cast<std::size_t>(
              state.free_jobs[static_cast<std::size_t>(ji)])];
      if (len != 0) row.coeffs[var(mi, ji)] = Rational(static_cast<long>(len));
    }
    row.sense = RowSense::LessEq;
    row.rhs = state.budget(machine) -
              Rational(static_cast<long>(
                  state.fixed_load[static_cast<std::size_t>(machine)]));
    lp.rows.push_back(std::move(row));
  }
  for (int mi = 0; mi < free_machines; ++mi) {  // capacity rows
    const int machine = state.free_machines[static_cast<std::size_t>(mi)];
    LinearRow row;
    for (int ji = 0; ji < free_jobs; ++ji) row.coeffs[var(mi, ji)] = 1;
    row.sense = RowSense::LessEq;
    row.rhs = Rational(static_cast<long>(state.residual_capacity(machine)));
    lp.rows.push_back(std::move(row));
  }
  for (int ji = 0; ji < free_jobs; ++ji) {  // assignment rows
    LinearRow row;
    for (int mi = 0; mi < free_machines; ++mi) row.coeffs[var(mi, ji)] = 1;
    row.sense = RowSense::Eq;
    row.rhs = 1;
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

FractionalAssignment solve_blpr_basic(const BlprState& state) {
  FractionalAssignment x;
  if (state.num_free_jobs == 0) return x;

  LinearProgram lp = build_blpr(state);
  SolveResult result = solve_feasible(lp);
  if (result.status != SolveStatus::Feasible) {
    throw InternalInvariantViolation(
        "bounded relaxation is infeasible: the budget vector lost feasibility",
        dump_state(state));
  }
  const std::vector<std::pair<int, int>> pairs = blpr_variable_pairs(state);
  const BasicSolution& sol = *result.solution;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const Rational& v = sol.values(static_cast<Eigen::Index>(idx));
    if (v != 0) x.set(pairs[idx].first, pairs[idx].second, v);
  }
  return x;
}

}  // namespace smcc
