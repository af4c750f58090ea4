#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fjsched/instance.hpp"
#include "fjsched/learning.hpp"
#include "fjsched/solution_graph.hpp"

namespace fjsched {

/// Output of a constructive heuristic. `makespan` is the completion time the
/// heuristic tracked while building; it always equals `critical.length`.
struct ScheduleResult {
  Solution solution;
  SolutionGraph graph;
  CriticalPathResult critical;
  Time makespan = 0;
};

/// Earliest starting time dispatching.
///
/// Each step computes the earliest instant r_min at which an unscheduled
/// operation with all predecessors scheduled could start on an eligible
/// machine, and among the (operation, machine) pairs starting at r_min picks
/// the shortest learning-adjusted processing time. Remaining ties go to the
/// smaller operation id, then the smaller machine id.
ScheduleResult est_schedule(const Instance& inst, LearningRate alpha);

/// Earliest completion time dispatching: picks the pair that finishes first,
/// whether or not it starts first. Ties: smaller operation id, then machine.
ScheduleResult ect_schedule(const Instance& inst, LearningRate alpha);

enum class HeuristicKind { Est, Ect };

struct BestConstructive {
  ScheduleResult result;
  HeuristicKind chosen = HeuristicKind::Est;
  Time est_makespan = 0;
  Time ect_makespan = 0;
};

/// Runs both heuristics and keeps the lower makespan; a tie keeps EST.
BestConstructive best_constructive(const Instance& inst, LearningRate alpha);

/// Incumbent files for exact solvers, named after the emitted models.
struct WarmStart {
  /// Values of every MILP variable, in manifest order.
  std::vector<std::pair<std::string, double>> milp_values;
  /// CPLEX MST (XML) rendering of `milp_values`.
  std::string mst_text;
  /// CP starting point: one line per present interval with start and end.
  std::string cp_text;
};

/// Throws InfeasibleError when the solution does not validate.
WarmStart warm_start_export(const Solution& sol, const Instance& inst, LearningRate alpha);

}  // namespace fjsched
