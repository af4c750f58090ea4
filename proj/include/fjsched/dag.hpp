#pragma once

#include <optional>
#include <vector>

#include "fjsched/types.hpp"

namespace fjsched {

// Utilities over precedence digraphs whose vertices are 1..vertex_count.
// Arc lists returned from here are sorted and duplicate free.

/// Returns one directed cycle if the digraph has any.
std::optional<std::vector<int>> find_cycle(int vertex_count, const ArcList& arcs);

/// Kahn order, smallest ready vertex first. Throws CycleError.
std::vector<OpId> topological_order(int vertex_count, const ArcList& arcs);

/// (i,j) is in the closure iff a directed path i ~> j exists, i != j.
ArcList transitive_closure(const ArcList& arcs, int vertex_count);

/// The unique minimal arc set of a DAG with the same closure.
ArcList transitive_reduction(const ArcList& arcs, int vertex_count);

/// Weakly connected components, each sorted, ordered by smallest member.
std::vector<std::vector<OpId>> weak_components(int vertex_count, const ArcList& arcs);

}  // namespace fjsched
