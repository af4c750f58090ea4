#pragma once

#include <map>
#include <vector>

#include "fjsched/instance.hpp"
#include "fjsched/learning.hpp"
#include "fjsched/types.hpp"

namespace fjsched {

/// A complete schedule decision: machine of each operation and the processing
/// order on each machine. Start times are derived, never stored.
struct Solution {
  /// assignment[i] is the machine of operation i; index 0 is unused.
  std::vector<MachineId> assignment;
  /// sequences[k] is the order on machine k; index 0 is unused.
  std::vector<std::vector<OpId>> sequences;

  static Solution empty(const Instance& inst);
  /// Builds `assignment` from `sequences` (sizes taken from the instance).
  static Solution from_sequences(const Instance& inst, std::vector<std::vector<OpId>> sequences);

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Solution digraph: operations plus a source and a sink.
///
/// Vertex 0 is the source, vertices 1..n are operations, vertex n+1 is the
/// sink. Arcs are the precedence arcs, source arcs into operations without a
/// precedence predecessor, sink arcs out of operations without a precedence
/// successor, and one machine arc per consecutive pair of each sequence.
/// Weights live on vertices; source and sink weigh 0.
struct SolutionGraph {
  int op_count = 0;
  int machine_count = 0;
  std::vector<std::vector<int>> successors;
  std::vector<Time> weight;
  /// machine[v] and position[v] (1-based) for operations; 0 for s and t.
  std::vector<MachineId> machine;
  std::vector<int> position;

  int vertex_count() const { return op_count + 2; }
  int source() const { return 0; }
  int sink() const { return op_count + 1; }
  std::size_t arc_count() const;
};

/// Throws InfeasibleError if `sol` does not match `inst` (missing or repeated
/// operations, ineligible machines, assignment/sequence mismatch) and
/// CycleError if machine arcs close a cycle with the precedences.
SolutionGraph build_solution_graph(const Instance& inst, const Solution& sol, LearningRate alpha);

/// Depth-first topological sort from the source; s first, t last.
/// Throws CycleError.
std::vector<int> topological_sort(const SolutionGraph& g);

struct CriticalPathResult {
  std::vector<int> topo_order;
  /// Operations on the critical path, source side first.
  std::vector<OpId> critical_path;
  Time length = 0;
  /// tau[k]: largest 1-based position in Q_k that holds a critical operation,
  /// 0 when none. Index 0 is unused.
  std::vector<int> tau;
};

/// Longest s-t path by dynamic programming over the topological order.
/// Ties keep the first predecessor seen. Throws CycleError.
CriticalPathResult critical_path(const SolutionGraph& g);

/// reach[v] holds every vertex u != v with a directed path u ~> v, sorted.
std::vector<std::vector<int>> reach_sets(const SolutionGraph& g);

/// Semi-active start times (longest path to each vertex), indexed by vertex.
std::vector<Time> start_times(const SolutionGraph& g, const std::vector<int>& topo_order);

}  // namespace fjsched
