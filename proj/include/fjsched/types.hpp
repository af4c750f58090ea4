#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fjsched {

/// Operation ids are 1-based, matching the instance file.
using OpId = int;
/// Machine ids are 1-based.
using MachineId = int;
/// All times downstream of the learning function are in scaled units (x100).
using Time = std::int64_t;

/// A precedence arc: `from` must complete before `to` starts.
struct Arc {
  OpId from = 0;
  OpId to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

using ArcList = std::vector<Arc>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not line-related.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A directed cycle was found where a DAG was required.
/// `cycle()` lists the vertices in order; the closing arc goes back to front().
class CycleError : public Error {
 public:
  CycleError(std::vector<int> cycle, const std::string& what)
      : Error(what), cycle_(std::move(cycle)) {}
  const std::vector<int>& cycle() const { return cycle_; }

 private:
  std::vector<int> cycle_;
};

/// A solution does not fit its instance (wrong machine, missing op, ...).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

std::string format_cycle(const std::vector<int>& cycle);

}  // namespace fjsched
