#include "fjsched/solution_graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace fjsched {

Solution Solution::empty(const Instance& inst) {
  Solution s;
  s.assignment.assign(inst.op_count() + 1, 0);
  s.sequences.assign(inst.machine_count() + 1, {});
  return s;
}

Solution Solution::from_sequences(const Instance& inst, std::vector<std::vector<OpId>> sequences) {
  Solution s = empty(inst);
  if (sequences.size() != s.sequences.size())
    throw InfeasibleError("expected " + std::to_string(inst.machine_count()) + " machine sequences");
  s.sequences = std::move(sequences);
  for (MachineId k = 1; k <= inst.machine_count(); ++k)
    for (OpId i : s.sequences[k])
      if (i >= 1 && i <= inst.op_count()) s.assignment[i] = k;
  return s;
}

std::size_t SolutionGraph::arc_count() const {
  std::size_t total = 0;
  for (const auto& s : successors) total += s.size();
  return total;
}

namespace {

void check_structure(const Instance& inst, const Solution& sol) {
  const int n = inst.op_count();
  const int m = inst.machine_count();
  if (static_cast<int>(sol.assignment.size()) != n + 1 ||
      static_cast<int>(sol.sequences.size()) != m + 1)
    throw InfeasibleError("solution sized for a different instance");
  std::vector<int> seen(n + 1, 0);
  for (MachineId k = 1; k <= m; ++k) {
    for (OpId i : sol.sequences[k]) {
      if (i < 1 || i > n) throw InfeasibleError("unknown operation " + std::to_string(i) + " on machine " + std::to_string(k));
      if (seen[i]++ > 0) throw InfeasibleError("operation " + std::to_string(i) + " sequenced twice");
      if (sol.assignment[i] != k)
        throw InfeasibleError("operation " + std::to_string(i) + " is sequenced on machine " + std::to_string(k) +
                              " but assigned to " + std::to_string(sol.assignment[i]));
      if (!inst.eligible(i, k))
        throw InfeasibleError("machine " + std::to_string(k) + " cannot process operation " + std::to_string(i));
    }
  }
  for (OpId i = 1; i <= n; ++i)
    if (seen[i] == 0) throw InfeasibleError("operation " + std::to_string(i) + " is not sequenced");
}

}  // namespace

SolutionGraph build_solution_graph(const Instance& inst, const Solution& sol, LearningRate alpha) {
  check_structure(inst, sol);
  const int n = inst.op_count();
  SolutionGraph g;
  g.op_count = n;
  g.machine_count = inst.machine_count();
  g.successors.assign(n + 2, {});
  g.weight.assign(n + 2, 0);
  g.machine.assign(n + 2, 0);
  g.position.assign(n + 2, 0);

  std::vector<OpId> machine_next(n + 1, 0);
  for (MachineId k = 1; k <= inst.machine_count(); ++k) {
    const auto& q = sol.sequences[k];
    for (std::size_t pos = 0; pos < q.size(); ++pos) {
      const OpId i = q[pos];
      g.machine[i] = k;
      g.position[i] = static_cast<int>(pos) + 1;
      g.weight[i] = psi(alpha, *inst.processing_time(i, k), g.position[i]);
      if (pos + 1 < q.size()) machine_next[i] = q[pos + 1];
    }
  }

  // Successor order: machine arc, precedence arcs, sink. The depth-first sort
  // visits them in this order.
  for (OpId i = 1; i <= n; ++i) {
    if (inst.predecessors(i).empty()) g.successors[g.source()].push_back(i);
    if (machine_next[i] != 0) g.successors[i].push_back(machine_next[i]);
    for (OpId j : inst.successors(i)) g.successors[i].push_back(j);
    if (inst.successors(i).empty()) g.successors[i].push_back(g.sink());
  }

  try {
    topological_sort(g);
  } catch (const CycleError& e) {
    throw CycleError(e.cycle(), "infeasible solution: machine sequences close a cycle " + format_cycle(e.cycle()));
  }
  return g;
}

std::vector<int> topological_sort(const SolutionGraph& g) {
  const int nv = g.vertex_count();
  std::vector<char> color(nv, 0);  // 0 new, 1 open, 2 finished
  std::vector<std::size_t> next(nv, 0);
  std::vector<int> parent(nv, -1);
  std::vector<int> finished;
  finished.reserve(nv);

  auto visit = [&](int root) {
    std::vector<int> stack{root};
    color[root] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      if (next[v] < g.successors[v].size()) {
        const int w = g.successors[v][next[v]++];
        if (color[w] == 0) {
          color[w] = 1;
          parent[w] = v;
          stack.push_back(w);
        } else if (color[w] == 1) {
          std::vector<int> cycle{w};
          for (int u = v; u != w; u = parent[u]) cycle.push_back(u);
          std::reverse(cycle.begin() + 1, cycle.end());
          throw CycleError(cycle, "solution graph has a cycle: " + format_cycle(cycle));
        }
      } else {
        color[v] = 2;
        finished.push_back(v);
        stack.pop_back();
      }
    }
  };

  visit(g.source());
  // Vertices on a cycle are unreachable from s; find them for the error.
  for (int v = 0; v < nv; ++v)
    if (color[v] == 0) visit(v);
  return {finished.rbegin(), finished.rend()};
}

std::vector<Time> start_times(const SolutionGraph& g, const std::vector<int>& topo_order) {
  std::vector<Time> d(g.vertex_count(), 0);
  for (int i : topo_order)
    for (int j : g.successors[i]) d[j] = std::max(d[j], d[i] + g.weight[i]);
  return d;
}

CriticalPathResult critical_path(const SolutionGraph& g) {
  CriticalPathResult res;
  res.topo_order = topological_sort(g);

  constexpr Time kUnreached = std::numeric_limits<Time>::min();
  std::vector<Time> d(g.vertex_count(), kUnreached);
  std::vector<int> pred(g.vertex_count(), -1);
  d[g.source()] = 0;
  for (int i : res.topo_order) {
    if (d[i] == kUnreached) continue;
    for (int j : g.successors[i]) {
      if (d[j] < d[i] + g.weight[i]) {
        d[j] = d[i] + g.weight[i];
        pred[j] = i;
      }
    }
  }
  res.length = d[g.sink()];

  res.tau.assign(g.machine_count + 1, 0);
  for (int i = pred[g.sink()]; i != g.source() && i >= 0; i = pred[i]) {
    if (res.tau[g.machine[i]] == 0) res.tau[g.machine[i]] = g.position[i];
    res.critical_path.push_back(i);
  }
  std::reverse(res.critical_path.begin(), res.critical_path.end());
  return res;
}

std::vector<std::vector<int>> reach_sets(const SolutionGraph& g) {
  topological_sort(g);  // cycle check
  const int nv = g.vertex_count();
  std::vector<std::vector<int>> preds(nv);
  for (int v = 0; v < nv; ++v)
    for (int w : g.successors[v]) preds[w].push_back(v);

  std::vector<std::vector<int>> reach(nv);
  std::vector<int> mark(nv, -1);
  for (int v = 0; v < nv; ++v) {
    std::vector<int> stack{v};
    mark[v] = v;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int p : preds[u]) {
        if (mark[p] == v) continue;
        mark[p] = v;
        reach[v].push_back(p);
        stack.push_back(p);
      }
    }
    std::sort(reach[v].begin(), reach[v].end());
  }
  return reach;
}

}  // namespace fjsched
