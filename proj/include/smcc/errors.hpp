#pragma once

#include <stdexcept>
#include <string>

namespace smcc {

/// Syntax error while reading an instance or schedule file. Line and column
/// are 1-based and refer to the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A structural guarantee of the rounding scheme failed at runtime: a bounded
/// feasibility program came back infeasible, an expected integral variable was
/// missing, or a produced solution violated its certified bounds. Carries a
/// serialized snapshot of the offending state for bug reports.
class InternalInvariantViolation : public std::runtime_error {
 public:
  explicit InternalInvariantViolation(const std::string& reason,
                                      std::string state_dump = {})
      : std::runtime_error(state_dump.empty() ? reason
                                              : reason + "\n" + state_dump),
        dump_(std::move(state_dump)) {}

  const std::string& state_dump() const { return dump_; }

 private:
  std::string dump_;
};

}  // namespace smcc
