#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "smcc/instance.hpp"
#include "support/cli_runner.hpp"

namespace fs = std::filesystem;
using smcc_test::CliResult;
using smcc_test::run_cli;
using smcc_test::slurp;

namespace {

const std::string kCli = SMCC_CLI_PATH;
const fs::path kData = SMCC_TEST_DATA_DIR;

std::string data(const std::string& name) {
  return (kData / name).string();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("smcc_test_" + tag + "_" +
                                              std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("solve prints makespan and the schedule line") {
  CliResult r = run_cli(kCli, "solve " + data("two_jobs.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "makespan 3\n1 2\n");
}

TEST_CASE("solve --certificate --trace matches the golden file") {
  CliResult r =
      run_cli(kCli, "solve " + data("two_jobs.txt") + " --certificate --trace");
  CHECK(r.exit_code == 0);
  CHECK(r.out == slurp(kData / "golden" / "solve_two_jobs.txt"));
  CHECK(r.out.find("ratio_ok true") != std::string::npos);
}

TEST_CASE("solve is byte-deterministic across runs") {
  const std::string args =
      "solve " + data("four_jobs.txt") + " --certificate --trace";
  CliResult a = run_cli(kCli, args);
  CliResult b = run_cli(kCli, args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("solve rejects malformed input with exit 2 and a position") {
  CliResult r = run_cli(kCli, "solve " + data("bad_syntax.txt"));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);

  CliResult cap = run_cli(kCli, "solve " + data("over_capacity.txt"));
  CHECK(cap.exit_code == 2);
  CHECK(cap.err.find("M exceeds total capacity") != std::string::npos);

  CliResult missing = run_cli(kCli, "solve /nonexistent/file.txt");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("gen is deterministic and its output re-parses") {
  fs::path dir = fresh_dir("gen");
  fs::path a = dir / "a.txt";
  fs::path b = dir / "b.txt";
  const std::string flags =
      "gen --k 3 --jobs 7 --cap-min 1 --cap-max 4 --t-max 50 --seed 99 --out ";
  CHECK(run_cli(kCli, flags + a.string()).exit_code == 0);
  CHECK(run_cli(kCli, flags + b.string()).exit_code == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));

  smcc::Instance inst = smcc::parse_instance(text);
  CHECK(inst.k == 3);
  CHECK(inst.num_jobs() == 7);
  fs::remove_all(dir);
}

TEST_CASE("gen rejects impossible parameters with exit 2") {
  CliResult r = run_cli(
      kCli, "gen --k 1 --jobs 5 --cap-min 1 --cap-max 1 --t-max 9 --seed 1 "
            "--out /tmp/smcc_gen_impossible.txt");
  CHECK(r.exit_code == 2);
}

TEST_CASE("verify exit codes and report") {
  CliResult ok = run_cli(
      kCli, "verify " + data("two_jobs.txt") + " " + data("sched_two_jobs_ok.txt"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("feasible true") != std::string::npos);
  CHECK(ok.out.find("makespan 3") != std::string::npos);

  CliResult bad = run_cli(kCli, "verify " + data("two_jobs.txt") + " " +
                                    data("sched_two_jobs_bad.txt"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("machine 1 over capacity") != std::string::npos);

  CliResult count = run_cli(kCli, "verify " + data("two_jobs.txt") + " " +
                                      data("sched_wrong_count.txt"));
  CHECK(count.exit_code == 2);
}

TEST_CASE("bench writes the golden CSV and a summary") {
  fs::path dir = fresh_dir("bench");
  fs::path csv = dir / "out.csv";
  CliResult r = run_cli(kCli, "bench " + (kData / "bench").string() +
                                  " --csv " + csv.string() + " --no-times");
  CHECK(r.exit_code == 0);
  CHECK(slurp(csv) == slurp(kData / "golden" / "bench_fixtures.csv"));
  CHECK(r.out == "instances 3 max_ratio 1.000000 indeterminate 0\n");

  // byte-identical on a second run
  fs::path csv2 = dir / "out2.csv";
  run_cli(kCli, "bench " + (kData / "bench").string() + " --csv " +
                    csv2.string() + " --no-times");
  CHECK(slurp(csv) == slurp(csv2));
  fs::remove_all(dir);
}

TEST_CASE("bench with timing columns keeps the same semantic cells") {
  fs::path dir = fresh_dir("bench_times");
  fs::path csv = dir / "out.csv";
  CliResult r = run_cli(kCli, "bench " + (kData / "bench").string() +
                                  " --csv " + csv.string());
  CHECK(r.exit_code == 0);
  std::string text = slurp(csv);
  CHECK(text.find("four_jobs.txt,2,4,4,5.000000,5,5,5,1.000000,") !=
        std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("bench on an empty directory writes a header-only CSV") {
  fs::path dir = fresh_dir("bench_empty");
  fs::path in = dir / "in";
  fs::create_directories(in);
  fs::path csv = dir / "out.csv";
  CliResult r =
      run_cli(kCli, "bench " + in.string() + " --csv " + csv.string());
  CHECK(r.exit_code == 0);
  CHECK(slurp(csv) ==
        "instance_id,k,M,t_max,c_star,ira_makespan,greedy_makespan,opt,"
        "ratio_vs_best_bound,ira_ms,greedy_ms,brute_ms\n");
  fs::remove_all(dir);
}

TEST_CASE("bench with a zero oracle budget leaves the opt column blank") {
  fs::path dir = fresh_dir("bench_nobudget");
  fs::path csv = dir / "out.csv";
  CliResult r = run_cli(kCli, "bench " + (kData / "bench").string() +
                                  " --csv " + csv.string() +
                                  " --brute-budget 0 --no-times");
  CHECK(r.exit_code == 0);
  CHECK(slurp(csv).find("two_jobs.txt,2,2,3,2.000000,3,3,,1.000000,,,") !=
        std::string::npos);
  CHECK(r.out.find("indeterminate 0") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("unknown flags are an input error") {
  CHECK(run_cli(kCli, "solve --frobnicate x").exit_code == 2);
  CHECK(run_cli(kCli, "").exit_code == 2);  // a subcommand is required
}
