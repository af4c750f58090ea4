#include "fjsched/dag.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

namespace fjsched {

std::string format_cycle(const std::vector<int>& cycle) {
  std::ostringstream out;
  for (int v : cycle) out << v << " -> ";
  if (!cycle.empty()) out << cycle.front();
  return out.str();
}

namespace {

std::vector<std::vector<int>> adjacency(int n, const ArcList& arcs) {
  std::vector<std::vector<int>> succ(n + 1);
  for (const Arc& a : arcs) succ[a.from].push_back(a.to);
  for (auto& s : succ) std::sort(s.begin(), s.end());
  return succ;
}

ArcList sorted_unique(ArcList arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return arcs;
}

}  // namespace

std::optional<std::vector<int>> find_cycle(int vertex_count, const ArcList& arcs) {
  const auto succ = adjacency(vertex_count, arcs);
  // 0 unvisited, 1 on stack, 2 done
  std::vector<char> color(vertex_count + 1, 0);
  std::vector<int> parent(vertex_count + 1, 0);
  std::vector<std::size_t> next(vertex_count + 1, 0);

  for (int root = 1; root <= vertex_count; ++root) {
    if (color[root] != 0) continue;
    std::vector<int> stack{root};
    color[root] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      if (next[v] < succ[v].size()) {
        const int w = succ[v][next[v]++];
        if (color[w] == 0) {
          color[w] = 1;
          parent[w] = v;
          stack.push_back(w);
        } else if (color[w] == 1) {
          std::vector<int> cycle{w};
          for (int u = v; u != w; u = parent[u]) cycle.push_back(u);
          std::reverse(cycle.begin() + 1, cycle.end());
          return cycle;
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

std::vector<OpId> topological_order(int vertex_count, const ArcList& arcs) {
  const auto succ = adjacency(vertex_count, arcs);
  std::vector<int> indegree(vertex_count + 1, 0);
  for (const Arc& a : arcs) ++indegree[a.to];

  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 1; v <= vertex_count; ++v)
    if (indegree[v] == 0) ready.push(v);

  std::vector<OpId> order;
  order.reserve(vertex_count);
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : succ[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  if (static_cast<int>(order.size()) != vertex_count) {
    auto cycle = find_cycle(vertex_count, arcs).value_or(std::vector<int>{});
    throw CycleError(cycle, "precedence digraph has a cycle: " + format_cycle(cycle));
  }
  return order;
}

namespace {

// reach[v] has bit w set iff w is reachable from v by a path of length >= 1.
std::vector<boost::dynamic_bitset<>> reachability(int n, const ArcList& arcs) {
  const auto order = topological_order(n, arcs);
  const auto succ = adjacency(n, arcs);
  std::vector<boost::dynamic_bitset<>> reach(n + 1, boost::dynamic_bitset<>(n + 1));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    for (int w : succ[v]) {
      reach[v].set(w);
      reach[v] |= reach[w];
    }
  }
  return reach;
}

}  // namespace

ArcList transitive_closure(const ArcList& arcs, int vertex_count) {
  const auto reach = reachability(vertex_count, arcs);
  ArcList closure;
  for (int v = 1; v <= vertex_count; ++v)
    for (auto w = reach[v].find_first(); w != boost::dynamic_bitset<>::npos;
         w = reach[v].find_next(w))
      closure.push_back({v, static_cast<int>(w)});
  return closure;
}

ArcList transitive_reduction(const ArcList& arcs, int vertex_count) {
  const ArcList unique = sorted_unique(arcs);
  const auto reach = reachability(vertex_count, unique);
  const auto succ = adjacency(vertex_count, unique);
  ArcList reduced;
  for (const Arc& a : unique) {
    const bool redundant = std::any_of(succ[a.from].begin(), succ[a.from].end(),
                                       [&](int m) { return m != a.to && reach[m].test(a.to); });
    if (!redundant) reduced.push_back(a);
  }
  return reduced;
}

std::vector<std::vector<OpId>> weak_components(int vertex_count, const ArcList& arcs) {
  std::vector<int> parent(vertex_count + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Arc& a : arcs) {
    const int ra = find(a.from);
    const int rb = find(a.to);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<OpId>> by_root(vertex_count + 1);
  for (int v = 1; v <= vertex_count; ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<OpId>> components;
  for (auto& c : by_root)
    if (!c.empty()) components.push_back(std::move(c));
  return components;
}

}  // namespace fjsched
