// smcc command-line front end.
//
// Exit codes: 0 success, 1 infeasible schedule (verify), 2 input error,
// 3 internal invariant violation / guarantee violation.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smcc/oracles.hpp"
#include "smcc/rounding.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInvariant = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string rational_pair(const smcc::Rational& r) {
  return smcc::to_fraction_string(r) + " (" + smcc::to_decimal_string(r) + ")";
}

struct SolveFlags {
  std::string instance_path;
  bool certificate = false;
  bool trace = false;
};

int run_solve(const SolveFlags& flags) {
  smcc::Instance instance =
      smcc::parse_instance(read_file(flags.instance_path));

  std::vector<std::pair<int, smcc::AuditReport>> audits;
  smcc::IraOptions options;
  if (flags.certificate) {
    options.audit = smcc::IraOptions::Audit::Always;
    options.observer = [&audits](const smcc::IraObservation& obs) {
      audits.emplace_back(obs.iteration, obs.audit);
    };
  }
  smcc::RoundingResult result = smcc::iterative_rounding(instance, options);

  std::cout << "makespan " << result.certificate.makespan << '\n';
  std::cout << smcc::serialize_schedule(result.schedule);

  if (flags.certificate) {
    const smcc::Certificate& cert = result.certificate;
    std::cout << "certificate:\n";
    std::cout << "lower_bound lp " << rational_pair(cert.lb_lp) << '\n';
    std::cout << "lower_bound longest_job " << cert.lb_longest_job << '\n';
    std::cout << "lower_bound average " << rational_pair(cert.lb_average)
              << '\n';
    std::cout << "best_lower_bound " << rational_pair(cert.best_lower_bound())
              << '\n';
    smcc::Rational budget_cap =
        cert.lb_lp +
        2 * smcc::Rational(static_cast<long>(cert.lb_longest_job));
    std::cout << "b_increase_bound " << cert.makespan
              << " <= " << rational_pair(budget_cap) << '\n';
    std::cout << "b_increase_bound_ok "
              << (cert.b_increase_bound_ok ? "true" : "false") << '\n';
    std::cout << "ratio " << cert.makespan << " <= 3 * "
              << rational_pair(cert.best_lower_bound()) << '\n';
    std::cout << "ratio_ok " << (cert.ratio_ok ? "true" : "false") << '\n';
    smcc::ScheduleReport report =
        smcc::verify_schedule(instance, result.schedule);
    for (int i = 0; i < instance.k; ++i) {
      std::cout << "machine " << i + 1 << " load "
                << report.per_machine_load[static_cast<std::size_t>(i)]
                << " b " << rational_pair(result.final_b(i)) << '\n';
    }
    std::cout << "audit:\n";
    for (const auto& [iteration, audit] : audits) {
      std::cout << "iter=" << iteration << ' ' << audit.to_line() << '\n';
    }
  }
  if (flags.trace) {
    for (const auto& record : result.trace) {
      std::cout << smcc::format_transition(record) << '\n';
    }
  }
  return kExitOk;
}

struct GenFlags {
  smcc::GenParams params;
  std::string out_path;
};

int run_gen(const GenFlags& flags) {
  smcc::Instance instance = smcc::generate_instance(flags.params);
  std::ofstream out(flags.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + flags.out_path);
  out << smcc::serialize_instance(instance);
  return kExitOk;
}

struct BenchFlags {
  std::string dir_path;
  std::string csv_path;
  std::uint64_t brute_budget = 1'000'000;
  bool no_times = false;
};

int run_bench(const BenchFlags& flags) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(flags.dir_path)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename().string().starts_with(".")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::ofstream csv(flags.csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write file: " + flags.csv_path);
  csv << "instance_id,k,M,t_max,c_star,ira_makespan,greedy_makespan,opt,"
         "ratio_vs_best_bound,ira_ms,greedy_ms,brute_ms\n";

  using clock = std::chrono::steady_clock;
  auto elapsed_ms = [](clock::time_point from, clock::time_point to) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(to - from)
        .count();
  };

  smcc::Rational max_ratio(0);
  bool any_ratio = false;
  int indeterminate = 0;
  for (const fs::path& file : files) {
    smcc::Instance instance;
    try {
      instance = smcc::parse_instance(read_file(file.string()));
    } catch (const std::exception& e) {
      throw std::runtime_error(file.filename().string() + ": " + e.what());
    }

    auto t0 = clock::now();
    smcc::RoundingResult rounded = smcc::iterative_rounding(instance);
    auto t1 = clock::now();
    smcc::Schedule greedy = smcc::greedy_lpt_capacity(instance);
    std::int64_t greedy_makespan = smcc::makespan(instance, greedy);
    auto t2 = clock::now();

    std::string opt_text;
    std::string brute_ms_text;
    if (flags.brute_budget > 0) {
      smcc::BruteForceLimits limits;
      limits.max_states = flags.brute_budget;
      // The node budget is the deterministic limit; keep the wall-clock net
      // wide so the opt column never depends on machine speed.
      limits.time_budget = std::chrono::hours(24);
      auto t3 = clock::now();
      smcc::BruteForceOutcome outcome = smcc::brute_force_opt(instance, limits);
      auto t4 = clock::now();
      brute_ms_text = std::to_string(elapsed_ms(t3, t4));
      if (outcome.determinate) {
        opt_text = std::to_string(outcome.opt);
      } else {
        ++indeterminate;
      }
    }

    smcc::LowerBounds bounds = smcc::lower_bounds(instance, rounded.c_star);
    smcc::Rational ratio(0);
    if (rounded.certificate.makespan > 0) {
      ratio = smcc::Rational(static_cast<long>(rounded.certificate.makespan)) /
              bounds.best();
    }
    if (!any_ratio || ratio > max_ratio) {
      max_ratio = ratio;
      any_ratio = true;
    }

    csv << file.filename().string() << ',' << instance.k << ','
        << instance.num_jobs() << ',' << instance.max_length() << ','
        << smcc::to_decimal_string(rounded.c_star) << ','
        << rounded.certificate.makespan << ',' << greedy_makespan << ','
        << opt_text << ',' << smcc::to_decimal_string(ratio) << ',';
    if (!flags.no_times) {
      csv << elapsed_ms(t0, t1) << ',' << elapsed_ms(t1, t2) << ','
          << brute_ms_text;
    } else {
      csv << ",,";
    }
    csv << '\n';

    if (ratio > 3) {
      std::cerr << "error: " << file.filename().string()
                << " exceeded the certified ratio: "
                << smcc::to_decimal_string(ratio) << " > 3\n";
      return kExitInvariant;
    }
  }
  std::cout << "instances " << files.size() << " max_ratio "
            << (any_ratio ? smcc::to_decimal_string(max_ratio)
                          : std::string("n/a"))
            << " indeterminate " << indeterminate << '\n';
  return kExitOk;
}

struct VerifyFlags {
  std::string instance_path;
  std::string schedule_path;
};

int run_verify(const VerifyFlags& flags) {
  smcc::Instance instance =
      smcc::parse_instance(read_file(flags.instance_path));
  smcc::Schedule schedule = smcc::parse_schedule(
      read_file(flags.schedule_path), instance.num_jobs());
  smcc::ScheduleReport report = smcc::verify_schedule(instance, schedule);
  std::cout << "feasible " << (report.feasible ? "true" : "false") << '\n';
  std::cout << "makespan " << report.makespan << '\n';
  for (int i = 0; i < instance.k; ++i) {
    std::cout << "machine " << i + 1 << " load "
              << report.per_machine_load[static_cast<std::size_t>(i)]
              << " count "
              << report.per_machine_count[static_cast<std::size_t>(i)]
              << " cap " << instance.capacities[static_cast<std::size_t>(i)]
              << '\n';
  }
  for (const std::string& violation : report.violations) {
    std::cout << "violation " << violation << '\n';
  }
  return report.feasible ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Makespan scheduling with machine capacity constraints"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand(
      "solve", "Round an instance to a schedule with a certified makespan");
  solve->add_option("instance", solve_flags.instance_path, "instance file")
      ->required();
  solve->add_flag("--certificate", solve_flags.certificate,
                  "print lower bounds, final budgets and the bound audit");
  solve->add_flag("--trace", solve_flags.trace,
                  "print one line per rounding transition");

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance file");
  gen->add_option("--k", gen_flags.params.k, "machine count")->required();
  gen->add_option("--jobs", gen_flags.params.jobs, "job count")->required();
  gen->add_option("--cap-min", gen_flags.params.cap_min,
                  "minimum machine capacity");
  gen->add_option("--cap-max", gen_flags.params.cap_max,
                  "maximum machine capacity")
      ->required();
  gen->add_option("--t-max", gen_flags.params.len_max,
                  "maximum job length (lengths drawn from [0, t-max])")
      ->required();
  gen->add_option("--seed", gen_flags.params.seed, "PRNG seed")->required();
  gen->add_option("--out", gen_flags.out_path, "output path")->required();

  BenchFlags bench_flags;
  CLI::App* bench = app.add_subcommand(
      "bench", "Run all solvers over a directory of instances, write CSV");
  bench->add_option("dir", bench_flags.dir_path, "instance directory")
      ->required();
  bench->add_option("--csv", bench_flags.csv_path, "CSV output path")
      ->required();
  bench->add_option("--brute-budget", bench_flags.brute_budget,
                    "search-node budget for the exact oracle (0 skips it)");
  bench->add_flag("--no-times", bench_flags.no_times,
                  "leave timing columns empty for byte-stable output");

  VerifyFlags verify_flags;
  CLI::App* verify =
      app.add_subcommand("verify", "Check a schedule file against an instance");
  verify->add_option("instance", verify_flags.instance_path, "instance file")
      ->required();
  verify->add_option("schedule", verify_flags.schedule_path, "schedule file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*solve) return run_solve(solve_flags);
    if (*gen) return run_gen(gen_flags);
    if (*bench) return run_bench(bench_flags);
    if (*verify) return run_verify(verify_flags);
  } catch (const smcc::InternalInvariantViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
