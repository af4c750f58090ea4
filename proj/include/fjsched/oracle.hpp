#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "fjsched/instance.hpp"
#include "fjsched/learning.hpp"
#include "fjsched/solution_graph.hpp"

namespace fjsched {

struct OracleLimits {
  /// Refuse instances whose raw combination estimate exceeds this, unless forced.
  double max_estimated_combinations = 1e8;
  bool force = false;
  /// Stop after this many complete schedules have been evaluated.
  std::uint64_t max_combinations = std::numeric_limits<std::uint64_t>::max();
  std::chrono::milliseconds time_budget = std::chrono::minutes(10);
  /// Seed the incumbent with the better constructive heuristic.
  bool seed_with_heuristics = true;
};

enum class OracleStatus { Complete, LimitExceeded, Refused };

const char* to_string(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::Complete;
  /// Best makespan found; optimal when status is Complete.
  Time optimal_makespan = 0;
  std::optional<Solution> witness;
  /// Complete schedules evaluated (pruned branches are not counted).
  std::uint64_t explored = 0;
  std::uint64_t assignments = 0;
  double estimated_combinations = 0.0;
};

/// Sum over all machine assignments of prod_k load_k!, the number of raw
/// (assignment, per-machine order) pairs. Saturates at `cap`.
double estimate_combinations(const Instance& inst, double cap = 1e18);

/// Exhaustive minimum makespan over every machine assignment and every
/// acyclic set of machine sequences.
///
/// Assignments are enumerated in mixed-radix order over operation ids. For a
/// fixed assignment, machine sequences are generated by appending ready
/// operations to the end of their machine, with semi-active start times fixed
/// on placement; requiring placements in increasing (start, op id) order makes
/// every acyclic sequence set appear exactly once. A branch is cut when a
/// lower bound on its makespan reaches the incumbent, which never changes the
/// optimum. Semi-active schedules suffice because makespan is regular.
///
/// The witness is the first schedule found with the final optimum in
/// enumeration order, so results are deterministic.
OracleResult brute_force_optimal(const Instance& inst, LearningRate alpha,
                                 const OracleLimits& limits = {});

std::string oracle_result_to_json(const OracleResult& result, LearningRate alpha);

}  // namespace fjsched
