#pragma once
// Shared fixtures and independent reference implementations for the tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "fjsched/instance.hpp"
#include "fjsched/learning.hpp"
#include "fjsched/solution_graph.hpp"

namespace fjtest {

using namespace fjsched;

// The twelve-operation example, built without the parser.
inline Instance example_instance() {
  constexpr Time X = 0;  // ineligible
  const Time table[12][3] = {{10, 20, 15}, {20, 15, 5},  {10, X, 20}, {X, 30, X},  {30, 40, 10}, {20, X, 30},
                             {X, 10, 20},  {40, 10, X},  {X, 40, 20}, {10, 20, 10}, {20, 10, X},  {X, X, 15}};
  std::vector<OperationSpec> ops;
  for (int i = 0; i < 12; ++i) {
    OperationSpec op{i + 1, {}};
    for (int k = 0; k < 3; ++k)
      if (table[i][k] != X) op.eligible.emplace_back(k + 1, table[i][k]);
    ops.push_back(op);
  }
  ArcList arcs{{1, 2}, {2, 4}, {3, 4}, {4, 5}, {5, 6}, {7, 8}, {7, 9}, {8, 11}, {9, 10}, {10, 11}, {11, 12}};
  return Instance(3, std::move(ops), std::move(arcs));
}

inline Solution example_solution_alpha0(const Instance& inst) {
  return Solution::from_sequences(inst, {{}, {3, 8, 6}, {7, 4, 11}, {1, 2, 9, 10, 5, 12}});
}

inline Solution example_solution_alpha05(const Instance& inst) {
  return Solution::from_sequences(inst, {{}, {1, 3, 10, 6}, {7, 8, 4, 11}, {2, 9, 5, 12}});
}

// 100 p r^-alpha rounded half up, in 100-digit decimal arithmetic. Values
// within 1e-40 of a half-integer count as exact ties.
inline Time psi_reference(double alpha, Time p, int r) {
  using big = boost::multiprecision::cpp_dec_float_100;
  const big v = big(100) * big(p) * boost::multiprecision::pow(big(r), -big(alpha)) + big("0.5");
  const big fl = boost::multiprecision::floor(v);
  Time out = fl.convert_to<Time>();
  if (v - fl > big(1) - big("1e-40")) ++out;
  return std::max<Time>(out, 1);
}

// Longest source-to-sink vertex weight over every path, by explicit path
// enumeration. Exponential; for graphs with a few dozen vertices at most.
inline Time longest_path_by_enumeration(const SolutionGraph& g) {
  Time best = 0;
  std::function<void(int, Time)> walk = [&](int v, Time acc) {
    acc += g.weight[v];
    if (v == g.sink()) {
      best = std::max(best, acc);
      return;
    }
    for (int w : g.successors[v]) walk(w, acc);
  };
  walk(g.source(), 0);
  return best;
}

// Makespan of (f, Q) with its own longest-path pass; nullopt if cyclic.
inline std::optional<Time> reference_makespan(const Instance& inst, LearningRate alpha,
                                              const std::vector<std::vector<OpId>>& seqs) {
  const int n = inst.op_count();
  std::vector<std::vector<int>> out(n + 1);
  std::vector<int> indeg(n + 1, 0);
  std::vector<Time> dur(n + 1, 0);
  for (const Arc& a : inst.precedence()) {
    out[a.from].push_back(a.to);
    ++indeg[a.to];
  }
  for (std::size_t k = 1; k < seqs.size(); ++k) {
    for (std::size_t r = 0; r < seqs[k].size(); ++r) {
      dur[seqs[k][r]] = psi(alpha, *inst.processing_time(seqs[k][r], static_cast<MachineId>(k)), static_cast<int>(r) + 1);
      if (r > 0) {
        out[seqs[k][r - 1]].push_back(seqs[k][r]);
        ++indeg[seqs[k][r]];
      }
    }
  }
  std::vector<Time> start(n + 1, 0);
  std::vector<int> stack;
  for (int v = 1; v <= n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int seen = 0;
  Time cmax = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++seen;
    cmax = std::max(cmax, start[v] + dur[v]);
    for (int w : out[v]) {
      start[w] = std::max(start[w], start[v] + dur[v]);
      if (--indeg[w] == 0) stack.push_back(w);
    }
  }
  if (seen != n) return std::nullopt;
  return cmax;
}

// Plain enumeration of every assignment and every permutation per machine.
inline Time naive_optimum(const Instance& inst, LearningRate alpha) {
  const int n = inst.op_count();
  const int m = inst.machine_count();
  std::vector<std::size_t> choice(n + 1, 0);
  Time best = std::numeric_limits<Time>::max();
  while (true) {
    std::vector<std::vector<OpId>> seqs(m + 1);
    for (OpId i = 1; i <= n; ++i) seqs[inst.op(i).eligible[choice[i]].first].push_back(i);
    std::function<void(int)> permute = [&](int k) {
      if (k > m) {
        if (auto c = reference_makespan(inst, alpha, seqs)) best = std::min(best, *c);
        return;
      }
      std::sort(seqs[k].begin(), seqs[k].end());
      do {
        permute(k + 1);
      } while (std::next_permutation(seqs[k].begin(), seqs[k].end()));
    };
    permute(1);
    OpId i = 1;
    while (i <= n && ++choice[i] == inst.op(i).eligible.size()) choice[i++] = 0;
    if (i > n) break;
  }
  return best;
}

inline Instance random_tiny(std::uint64_t seed, int max_ops = 6, int max_machines = 3) {
  std::mt19937_64 rng(seed);
  RandomInstanceParams p;
  p.seed = rng();
  p.op_count = std::uniform_int_distribution<int>(1, max_ops)(rng);
  p.machine_count = std::uniform_int_distribution<int>(1, max_machines)(rng);
  p.job_count = std::uniform_int_distribution<int>(1, std::min(p.op_count, 3))(rng);
  const DagShape shapes[] = {DagShape::Chain, DagShape::Y, DagShape::Arbitrary};
  p.shape = shapes[rng() % 3];
  p.density = 0.4;
  p.eligibility_probability = 0.6;
  p.min_time = 1;
  p.max_time = 30;
  return generate_random_instance(p);
}

}  // namespace fjtest
