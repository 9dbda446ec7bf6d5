#include "smcc/instance.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

namespace smcc {
namespace {

struct Token {
  std::string_view text;
  int line;
  int column;
};

// Whitespace-separated tokens with positions; lines starting with '#'
// (after optional blanks) are dropped entirely.
std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view row = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos
                                           : eol - pos);
    std::size_t first = row.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && row[first] != '#') {
      std::size_t i = first;
      while (i < row.size()) {
        if (row[i] == ' ' || row[i] == '\t' || row[i] == '\r') {
          ++i;
          continue;
        }
        std::size_t start = i;
        while (i < row.size() && row[i] != ' ' && row[i] != '\t' &&
               row[i] != '\r') {
          ++i;
        }
        tokens.push_back(
            {row.substr(start, i - start), line, static_cast<int>(start) + 1});
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
    ++line;
  }
  return tokens;
}

class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : tokens_(tokenize(text)) {}

  std::int64_t next_int(const char* what) {
    if (index_ >= tokens_.size()) {
      const Token* last = tokens_.empty() ? nullptr : &tokens_.back();
      throw ParseError(last ? last->line : 1, last ? last->column : 1,
                       std::string("unexpected end of input, expected ") +
                           what);
    }
    const Token& tok = tokens_[index_++];
    std::int64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(),
                        value);
    if (ec == std::errc::result_out_of_range) {
      throw ParseError(tok.line, tok.column, "integer out of range: '" +
                                                 std::string(tok.text) + "'");
    }
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
      throw ParseError(tok.line, tok.column,
                       std::string("expected ") + what + ", got '" +
                           std::string(tok.text) + "'");
    }
    return value;
  }

  void expect_end() {
    if (index_ < tokens_.size()) {
      const Token& tok = tokens_[index_];
      throw ParseError(tok.line, tok.column,
                       "trailing input: '" + std::string(tok.text) + "'");
    }
  }

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

// Uniform draw in [lo, hi] via mask-and-reject on mt19937_64 words. Fixed
// algorithm: std::uniform_int_distribution is implementation-defined and
// would break cross-platform reproducibility. A single-point range consumes
// no randomness.
std::int64_t bounded_draw(std::mt19937_64& rng, std::int64_t lo,
                          std::int64_t hi) {
  if (lo == hi) return lo;
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t mask = range - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    std::uint64_t word = rng() & mask;
    if (word < range) return lo + static_cast<std::int64_t>(word);
  }
}

}  // namespace

std::int64_t Instance::total_capacity() const {
  return std::accumulate(capacities.begin(), capacities.end(),
                         std::int64_t{0});
}

std::int64_t Instance::total_length() const {
  return std::accumulate(lengths.begin(), lengths.end(), std::int64_t{0});
}

std::int64_t Instance::max_length() const {
  if (lengths.empty()) return 0;
  return *std::max_element(lengths.begin(), lengths.end());
}

Instance make_instance(int k, std::vector<std::int64_t> capacities,
                       std::vector<std::int64_t> lengths) {
  if (k < 1) throw std::invalid_argument("machine count must be >= 1");
  if (static_cast<int>(capacities.size()) != k) {
    throw std::invalid_argument("expected " + std::to_string(k) +
                                " capacities, got " +
                                std::to_string(capacities.size()));
  }
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    if (capacities[i] < 1) {
      throw std::invalid_argument("capacity of machine " +
                                  std::to_string(i + 1) + " must be >= 1");
    }
  }
  for (std::size_t j = 0; j < lengths.size(); ++j) {
    if (lengths[j] < 0) {
      throw std::invalid_argument("length of job " + std::to_string(j + 1) +
                                  " must be >= 0");
    }
  }
  Instance instance{k, std::move(capacities), std::move(lengths)};
  if (static_cast<std::int64_t>(instance.lengths.size()) >
      instance.total_capacity()) {
    throw std::invalid_argument(
        "M exceeds total capacity (" +
        std::to_string(instance.lengths.size()) + " jobs > " +
        std::to_string(instance.total_capacity()) + " slots)");
  }
  return instance;
}

Instance parse_instance(std::string_view text) {
  TokenReader reader(text);
  std::int64_t k = reader.next_int("machine count k");
  std::int64_t jobs = reader.next_int("job count M");
  if (k < 1) throw std::invalid_argument("machine count must be >= 1");
  if (jobs < 0) throw std::invalid_argument("job count must be >= 0");
  std::vector<std::int64_t> capacities;
  capacities.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) {
    capacities.push_back(reader.next_int("capacity"));
  }
  std::vector<std::int64_t> lengths;
  lengths.reserve(static_cast<std::size_t>(jobs));
  for (std::int64_t j = 0; j < jobs; ++j) {
    lengths.push_back(reader.next_int("job length"));
  }
  reader.expect_end();
  return make_instance(static_cast<int>(k), std::move(capacities),
                       std::move(lengths));
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << instance.k << ' ' << instance.num_jobs() << '\n';
  for (int i = 0; i < instance.k; ++i) {
    if (i > 0) out << ' ';
    out << instance.capacities[i];
  }
  out << '\n';
  for (int j = 0; j < instance.num_jobs(); ++j) {
    if (j > 0) out << ' ';
    out << instance.lengths[j];
  }
  out << '\n';
  return out.str();
}

Schedule parse_schedule(std::string_view text, int expected_jobs) {
  TokenReader reader(text);
  Schedule schedule;
  schedule.assignment.reserve(static_cast<std::size_t>(expected_jobs));
  for (int j = 0; j < expected_jobs; ++j) {
    std::int64_t machine = reader.next_int("machine index");
    if (machine < 1) {
      throw std::invalid_argument("machine index of job " +
                                  std::to_string(j + 1) + " must be >= 1");
    }
    schedule.assignment.push_back(static_cast<int>(machine - 1));
  }
  reader.expect_end();
  return schedule;
}

std::string serialize_schedule(const Schedule& schedule) {
  std::ostringstream out;
  for (std::size_t j = 0; j < schedule.assignment.size(); ++j) {
    if (j > 0) out << ' ';
    out << schedule.assignment[j] + 1;
  }
  out << '\n';
  return out.str();
}

std::int64_t makespan(const Instance& instance, const Schedule& schedule) {
  if (static_cast<int>(schedule.assignment.size()) != instance.num_jobs()) {
    throw std::invalid_argument(
        "schedule has " + std::to_string(schedule.assignment.size()) +
        " entries, instance has " + std::to_string(instance.num_jobs()) +
        " jobs");
  }
  std::vector<std::int64_t> load(static_cast<std::size_t>(instance.k), 0);
  for (int j = 0; j < instance.num_jobs(); ++j) {
    int machine = schedule.assignment[static_cast<std::size_t>(j)];
    if (machine < 0 || machine >= instance.k) {
      throw std::invalid_argument("machine index of job " +
                                  std::to_string(j + 1) + " out of range");
    }
    load[static_cast<std::size_t>(machine)] +=
        instance.lengths[static_cast<std::size_t>(j)];
  }
  return *std::max_element(load.begin(), load.end());
}

ScheduleReport verify_schedule(const Instance& instance,
                               const Schedule& schedule) {
  ScheduleReport report;
  report.per_machine_load.assign(static_cast<std::size_t>(instance.k), 0);
  report.per_machine_count.assign(static_cast<std::size_t>(instance.k), 0);

  if (static_cast<int>(schedule.assignment.size()) != instance.num_jobs()) {
    report.violations.push_back(
        "schedule assigns " + std::to_string(schedule.assignment.size()) +
        " jobs but the instance has " + std::to_string(instance.num_jobs()));
  }
  const int covered = std::min(static_cast<int>(schedule.assignment.size()),
                               instance.num_jobs());
  for (int j = 0; j < covered; ++j) {
    int machine = schedule.assignment[static_cast<std::size_t>(j)];
    if (machine < 0 || machine >= instance.k) {
      report.violations.push_back("job " + std::to_string(j + 1) +
                                  " assigned to machine " +
                                  std::to_string(machine + 1) +
                                  ", outside [1, " +
                                  std::to_string(instance.k) + "]");
      continue;
    }
    report.per_machine_load[static_cast<std::size_t>(machine)] +=
        instance.lengths[static_cast<std::size_t>(j)];
    report.per_machine_count[static_cast<std::size_t>(machine)] += 1;
  }
  for (int i = 0; i < instance.k; ++i) {
    if (report.per_machine_count[static_cast<std::size_t>(i)] >
        instance.capacities[static_cast<std::size_t>(i)]) {
      report.violations.push_back(
          "machine " + std::to_string(i + 1) + " over capacity: " +
          std::to_string(report.per_machine_count[static_cast<std::size_t>(i)]) +
          " jobs > m=" +
          std::to_string(instance.capacities[static_cast<std::size_t>(i)]));
    }
  }
  report.makespan = *std::max_element(report.per_machine_load.begin(),
                                      report.per_machine_load.end());
  report.feasible = report.violations.empty();
  return report;
}

Instance generate_instance(const GenParams& params) {
  if (params.k < 1) throw std::invalid_argument("k must be >= 1");
  if (params.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  if (params.cap_min < 1 || params.cap_min > params.cap_max) {
    throw std::invalid_argument("empty capacity range");
  }
  if (params.len_min < 0 || params.len_min > params.len_max) {
    throw std::invalid_argument("empty length range");
  }
  if (params.jobs > params.k * params.cap_max) {
    throw std::invalid_argument(
        "impossible parameters: jobs > k * cap_max (" +
        std::to_string(params.jobs) + " > " +
        std::to_string(params.k * params.cap_max) + ")");
  }

  std::mt19937_64 rng(params.seed);
  std::vector<std::int64_t> capacities(static_cast<std::size_t>(params.k));
  for (auto& cap : capacities) {
    cap = bounded_draw(rng, params.cap_min, params.cap_max);
  }
  std::int64_t total =
      std::accumulate(capacities.begin(), capacities.end(), std::int64_t{0});
  // Inflate round-robin, skipping machines already at cap_max; termination is
  // guaranteed by the jobs <= k * cap_max check above.
  for (std::size_t i = 0; total < params.jobs;
       i = (i + 1) % capacities.size()) {
    if (capacities[i] < params.cap_max) {
      ++capacities[i];
      ++total;
    }
  }
  std::vector<std::int64_t> lengths(static_cast<std::size_t>(params.jobs));
  for (auto& len : lengths) {
    len = bounded_draw(rng, params.len_min, params.len_max);
  }
  return make_instance(params.k, std::move(capacities), std::move(lengths));
}

}  // namespace smcc
