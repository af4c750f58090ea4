#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fjsched/instance.hpp"
#include "fjsched/learning.hpp"
#include "fjsched/solution_graph.hpp"

namespace fjsched {

enum class ViolationKind {
  Structure,    // malformed ids or container sizes
  Assignment,   // operation missing, repeated, or assignment/sequence mismatch
  Eligibility,  // machine cannot process the operation
  Cycle,        // machine order contradicts the precedences
  Precedence,   // explicit start times break a precedence
  Overlap,      // explicit start times overlap on a machine
  StartTime,    // negative explicit start time
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  bool feasible = false;
  /// Meaningful only when feasible.
  Time makespan = 0;
  std::vector<Violation> violations;
  /// Derived semi-active start times (or the supplied ones), index = op id.
  std::vector<Time> start;
  /// Learning-adjusted durations, index = op id.
  std::vector<Time> duration;
};

/// Checks a solution against the instance and recomputes its makespan.
///
/// Start times are derived here from (assignment, sequences) with a Kahn pass
/// over precedence and machine predecessors, sharing no code with the solution
/// graph or the heuristics. If `explicit_start` is given (index = op id) those
/// times are checked for precedence, machine order, non-overlap and
/// non-negativity instead, and the makespan is their maximum completion.
/// Violations are reported, never thrown.
ValidationReport validate(const Instance& inst, LearningRate alpha, const Solution& sol,
                          std::optional<std::span<const Time>> explicit_start = std::nullopt);

std::string validation_report_to_json(const ValidationReport& report);

}  // namespace fjsched
