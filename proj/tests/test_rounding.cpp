#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "smcc/oracles.hpp"
#include "smcc/rounding.hpp"
#include "support/fuzz.hpp"

using namespace smcc;

namespace {

RatVector budgets(std::initializer_list<Rational> values) {
  RatVector b(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const Rational& v : values) b(i++) = v;
  return b;
}

BlprState half_half_state() {
  Instance inst = make_instance(2, {1, 1}, {3, 1});
  return make_blpr_state(inst, budgets({2, 2}), {});
}

FractionalAssignment half_half_x() {
  const Rational half = make_rational(1, 2);
  FractionalAssignment x;
  x.set(0, 0, half);
  x.set(0, 1, half);
  x.set(1, 0, half);
  x.set(1, 1, half);
  return x;
}

std::string trace_text(const RoundingResult& result) {
  std::ostringstream out;
  for (const auto& record : result.trace) {
    out << format_transition(record) << '\n';
  }
  return out.str();
}

// Per-machine fractional time load of x, plus the fixed load.
Rational machine_load(const BlprState& state, const FractionalAssignment& x,
                      int machine) {
  Rational load(static_cast<long>(
      state.fixed_load[static_cast<std::size_t>(machine)]));
  for (const auto& [pair, v] : x.entries) {
    if (pair.first == machine) {
      load += v * Rational(static_cast<long>(
                      state.instance.lengths[static_cast<std::size_t>(
                          pair.second)]));
    }
  }
  return load;
}

}  // namespace

TEST_CASE("find_integral_pairs") {
  Instance single = make_instance(1, {3}, {1, 2, 3});
  BlprState state = make_blpr_state(single, budgets({6}), {});
  FractionalAssignment x = solve_blpr_basic(state);
  CHECK(find_integral_pairs(state, x) ==
        std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {0, 2}});

  CHECK(find_integral_pairs(half_half_state(), half_half_x()).empty());

  FractionalAssignment mixed = half_half_x();
  mixed.set(1, 4, 1);  // an integral entry among fractions
  CHECK(find_integral_pairs(half_half_state(), mixed) ==
        std::vector<std::pair<int, int>>{{1, 4}});
}

TEST_CASE("f_transition fixes pairs and leaves budgets alone") {
  Instance single = make_instance(1, {3}, {1, 2, 3});
  BlprState state = make_blpr_state(single, budgets({6}), {});

  BlprState next = f_transition(state, {{0, 0}});
  CHECK(next.fixed_count[0] == 1);
  CHECK(next.free_jobs == std::vector<int>{1, 2});
  CHECK(next.budget(0) == state.budget(0));

  // fixing all pairs at once equals fixing them one by one
  BlprState at_once = f_transition(state, {{0, 0}, {0, 1}, {0, 2}});
  BlprState stepwise =
      f_transition(f_transition(f_transition(state, {{0, 0}}), {{0, 1}}),
                   {{0, 2}});
  CHECK(at_once.fixed == stepwise.fixed);
  CHECK(at_once.budget == stepwise.budget);
  CHECK(at_once.num_free_jobs == 0);

  // filling the last slot removes the machine from the free set
  CHECK(at_once.free_machines.empty());

  CHECK_THROWS_AS(f_transition(state, {}), std::invalid_argument);
  CHECK_THROWS_AS(f_transition(state, {{0, 0}, {0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("select_g_pair picks the lowest capacity-1 machine, longest job") {
  BlprState state = half_half_state();
  auto [p, q] = select_g_pair(state);
  CHECK(p == 0);
  CHECK(q == 0);  // length 3 beats length 1

  Instance inst = make_instance(3, {2, 1, 1}, {5, 5});
  BlprState wide = make_blpr_state(inst, budgets({5, 5, 5}), {});
  auto [p2, q2] = select_g_pair(wide);
  CHECK(p2 == 1);  // machine 0 has residual 2
  CHECK(q2 == 0);  // tie on length goes to the lower index
}

TEST_CASE("g_exchange reroutes the whole job onto p (worked example)") {
  BlprState state = half_half_state();
  FractionalAssignment after = g_exchange(state, half_half_x(), 0, 0);
  CHECK(after.value(0, 0) == 1);
  CHECK(after.value(1, 1) == 1);
  CHECK(after.value(0, 1) == 0);
  CHECK(after.value(1, 0) == 0);
}

TEST_CASE("g_exchange when the pair is already integral is a no-op") {
  BlprState state = half_half_state();
  FractionalAssignment x;
  x.set(0, 0, 1);
  x.set(1, 1, 1);
  CHECK(g_exchange(state, x, 0, 0).entries == x.entries);
}

TEST_CASE("g_exchange pulls a fully remote job over directly") {
  // p carries nothing but q: the else branch moves the whole fraction
  Instance inst = make_instance(2, {1, 2}, {4});
  BlprState state = make_blpr_state(inst, budgets({4, 4}), {});
  FractionalAssignment x;
  x.set(1, 0, 1);
  FractionalAssignment after = g_exchange(state, x, 0, 0);
  CHECK(after.value(0, 0) == 1);
  CHECK(after.value(1, 0) == 0);
}

TEST_CASE("g_transition on the worked example") {
  BlprState state = half_half_state();
  BlprState next = g_transition(state, half_half_x());
  CHECK(next.fixed == std::set<std::pair<int, int>>{{0, 0}});
  CHECK(next.budget(0) == 5);  // 2 + t_q = 2 + 3
  CHECK(next.budget(1) == 2);
  CHECK(next.free_machines == std::vector<int>{1});
  CHECK(next.free_jobs == std::vector<int>{1});
}

TEST_CASE("g_transition raises the budget even for an integral pair") {
  Instance inst = make_instance(2, {1, 2}, {4});
  BlprState state = make_blpr_state(inst, budgets({4, 4}), {});
  FractionalAssignment x;
  x.set(0, 0, 1);
  BlprState next = g_transition(state, x);
  CHECK(next.budget(0) == 8);
}

TEST_CASE("plan_h_assignment follows the stated deterministic policy") {
  Instance inst = make_instance(2, {2, 2}, {1, 1, 1});
  BlprState state =
      make_blpr_state(inst, budgets({make_rational(3, 2), make_rational(3, 2)}),
                      {});
  CHECK(plan_h_assignment(state) ==
        std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 2}});

  BlprState next = h_transition(state);
  CHECK(next.num_free_jobs == 0);
  CHECK(next.budget(0) == make_rational(3, 2) + 2);
  CHECK(next.budget(1) == make_rational(3, 2) + 1);

  Instance mixed = make_instance(2, {2, 2}, {2, 9, 5});
  BlprState by_length = make_blpr_state(mixed, budgets({9, 9}), {});
  // descending lengths: job 1 (9), job 2 (5), job 0 (2)
  CHECK(plan_h_assignment(by_length) ==
        std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 0}});
}

TEST_CASE("h_transition edge cases") {
  Instance one = make_instance(2, {2, 2}, {7});
  BlprState state = make_blpr_state(one, budgets({1, 1}), {});
  BlprState next = h_transition(state);
  CHECK(next.budget(0) == 8);  // exactly one machine grows
  CHECK(next.budget(1) == 1);

  Instance inst = make_instance(2, {1, 1}, {3, 1});
  BlprState done = make_blpr_state(inst, budgets({3, 1}), {{0, 0}, {1, 1}});
  BlprState same = h_transition(done);  // no free jobs: identity
  CHECK(same.fixed == done.fixed);
  CHECK(same.budget == done.budget);

  BlprState caps_too_small = half_half_state();  // residual capacity 1 < 2
  CHECK_THROWS_AS(h_transition(caps_too_small), std::invalid_argument);
}

TEST_CASE("iterative_rounding on the fixtures") {
  RoundingResult two = iterative_rounding(make_instance(2, {1, 1}, {3, 1}));
  CHECK(two.certificate.makespan == 3);
  CHECK(two.c_star == 2);
  CHECK(two.certificate.lb_longest_job == 3);
  CHECK(two.certificate.b_increase_bound_ok);
  CHECK(two.certificate.ratio_ok);
  REQUIRE(two.trace.size() == 2);
  CHECK(two.trace[0].kind == TransitionKind::G);
  CHECK(two.trace[1].kind == TransitionKind::G);
  CHECK(trace_text(two) ==
        "iter=1 kind=G fixed=(1,1) db=(1:+3)\n"
        "iter=2 kind=G fixed=(2,2) db=(2:+1)\n");

  RoundingResult single =
      iterative_rounding(make_instance(1, {3}, {1, 2, 3}));
  CHECK(single.certificate.makespan == 6);  // no choice exists

  // regression fixture, frozen after the first verified run; the exact
  // oracle puts the optimum at 5, so the rounded makespan is optimal here
  RoundingResult four =
      iterative_rounding(make_instance(2, {2, 2}, {4, 3, 2, 1}));
  CHECK(four.certificate.makespan == 5);
  CHECK(four.c_star == 5);
  CHECK(trace_text(four) == "iter=1 kind=F fixed=(1,1)(1,4)(2,2)(2,3)\n");
}

TEST_CASE("empty instance rounds to an empty schedule") {
  RoundingResult result = iterative_rounding(make_instance(2, {1, 1}, {}));
  CHECK(result.certificate.makespan == 0);
  CHECK(result.schedule.assignment.empty());
  CHECK(result.trace.empty());
  CHECK(result.certificate.ratio_ok);
}

TEST_CASE("zero-length jobs are legal everywhere") {
  RoundingResult result =
      iterative_rounding(make_instance(2, {1, 1}, {0, 0}));
  CHECK(result.certificate.makespan == 0);
  CHECK(result.certificate.ratio_ok);
}

TEST_CASE("identical instances give identical traces and schedules") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    Instance inst = smcc_test::random_instance(rng, 4, 9, 3, 25);
    RoundingResult a = iterative_rounding(inst);
    RoundingResult b = iterative_rounding(inst);
    CHECK(trace_text(a) == trace_text(b));
    CHECK(a.schedule.assignment == b.schedule.assignment);
  }
}

TEST_CASE("trace semantics: record shapes and single budget increase") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = smcc_test::random_instance(rng, 4, 10, 2, 30);
    RoundingResult result = iterative_rounding(inst);
    std::map<int, int> increases;
    int last_iteration = 0;
    for (const auto& record : result.trace) {
      CHECK(record.iteration == last_iteration + 1);
      last_iteration = record.iteration;
      switch (record.kind) {
        case TransitionKind::F:
          CHECK(record.budget_deltas.empty());
          CHECK(!record.pairs_fixed.empty());
          break;
        case TransitionKind::G: {
          REQUIRE(record.pairs_fixed.size() == 1);
          REQUIRE(record.budget_deltas.size() == 1);
          const auto& [machine, job] = record.pairs_fixed[0];
          CHECK(record.budget_deltas.at(machine) ==
                Rational(static_cast<long>(
                    inst.lengths[static_cast<std::size_t>(job)])));
          break;
        }
        case TransitionKind::H: {
          std::map<int, int> per_machine;
          for (const auto& [machine, job] : record.pairs_fixed) {
            (void)job;
            per_machine[machine] += 1;
          }
          for (const auto& [machine, count] : per_machine) {
            (void)machine;
            CHECK(count <= 2);
          }
          break;
        }
      }
      for (const auto& [machine, delta] : record.budget_deltas) {
        (void)delta;
        increases[machine] += 1;
      }
    }
    for (const auto& [machine, count] : increases) {
      (void)machine;
      CHECK(count <= 1);  // a raised machine leaves the free set for good
    }
    // final loads within final budgets
    ScheduleReport report = verify_schedule(inst, result.schedule);
    REQUIRE(report.feasible);
    for (int i = 0; i < inst.k; ++i) {
      CHECK(Rational(static_cast<long>(
                report.per_machine_load[static_cast<std::size_t>(i)])) <=
            result.final_b(i));
    }
  }
}

TEST_CASE("audit mode controls observer callbacks") {
  Instance inst = make_instance(2, {1, 1}, {3, 1});
  int calls = 0;
  IraOptions options;
  options.observer = [&calls](const IraObservation&) { ++calls; };

  options.audit = IraOptions::Audit::Off;
  iterative_rounding(inst, options);
  CHECK(calls == 0);

  options.audit = IraOptions::Audit::Always;
  iterative_rounding(inst, options);
  CHECK(calls == 2);  // one per iteration

  calls = 0;
  options.audit = IraOptions::Audit::Sampled;
  iterative_rounding(inst, options);
  CHECK(calls == 1);  // iteration 1 only
}

TEST_CASE("exchange conservation over pipeline-generated states") {
  std::mt19937_64 rng(41);
  int events = 0;
  int attempts = 0;
  while (events < 200 && attempts < 3000) {
    ++attempts;
    Instance inst = smcc_test::random_instance(rng, 5, 10, 2, 20);
    IraOptions options;
    options.audit = IraOptions::Audit::Always;
    options.observer = [&events](const IraObservation& obs) {
      const BlprState& state = obs.state;
      if (state.num_free_jobs >= 2 * state.num_free_machines) return;
      bool has_capacity_one = false;
      for (int machine : state.free_machines) {
        if (state.residual_capacity(machine) == 1) has_capacity_one = true;
      }
      if (!has_capacity_one || state.num_free_jobs == 0) return;
      ++events;

      const auto [p, q] = select_g_pair(state);
      const Rational t_q(static_cast<long>(
          state.instance.lengths[static_cast<std::size_t>(q)]));
      FractionalAssignment after = g_exchange(state, obs.x, p, q);

      // column sums stay exactly 1
      for (int job : state.free_jobs) {
        Rational before_sum = 0, after_sum = 0;
        for (int machine : state.free_machines) {
          before_sum += obs.x.value(machine, job);
          after_sum += after.value(machine, job);
        }
        CHECK(before_sum == 1);
        CHECK(after_sum == 1);
      }
      // no machine's load grows except p's, and p's by at most t_q
      for (int machine : state.free_machines) {
        Rational before = machine_load(state, obs.x, machine);
        Rational now = machine_load(state, after, machine);
        if (machine == p) {
          CHECK(now <= before + t_q);
        } else {
          CHECK(now <= before);
        }
      }
      CHECK(after.value(p, q) == 1);
      // p's fractional count ends exactly at its residual capacity of 1
      Rational count = 0;
      for (int job : state.free_jobs) count += after.value(p, job);
      CHECK(count == 1);
    };
    iterative_rounding(inst, options);
  }
  CHECK(events >= 200);
}
