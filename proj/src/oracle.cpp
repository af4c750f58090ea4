#include "fjsched/oracle.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

#include "fjsched/heuristics.hpp"

namespace fjsched {

const char* to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::Complete: return "complete";
    case OracleStatus::LimitExceeded: return "limit-exceeded";
    case OracleStatus::Refused: return "refused";
  }
  return "unknown";
}

double estimate_combinations(const Instance& inst, double cap) {
  double assignments = 1.0;
  for (const auto& op : inst.operations()) {
    assignments *= static_cast<double>(op.eligible.size());
    if (assignments >= cap) return cap;
  }
  // Distribution of machine loads over all assignments.
  std::map<std::vector<int>, double> states{{std::vector<int>(inst.machine_count() + 1, 0), 1.0}};
  constexpr std::size_t kMaxStates = 200000;
  for (const auto& op : inst.operations()) {
    std::map<std::vector<int>, double> next;
    for (const auto& [loads, ways] : states) {
      for (const auto& [k, p] : op.eligible) {
        auto l = loads;
        ++l[k];
        next[l] += ways;
      }
    }
    if (next.size() > kMaxStates) return cap;
    states = std::move(next);
  }
  double total = 0.0;
  for (const auto& [loads, ways] : states) {
    double orders = ways;
    for (int load : loads)
      for (int f = 2; f <= load; ++f) orders *= f;
    total += orders;
    if (total >= cap) return cap;
  }
  return total;
}

namespace {

using Clock = std::chrono::steady_clock;

class Enumerator {
 public:
  Enumerator(const Instance& inst, LearningRate alpha, const OracleLimits& limits)
      : inst_(inst),
        alpha_(alpha),
        limits_(limits),
        n_(inst.op_count()),
        m_(inst.machine_count()),
        deadline_(Clock::now() + limits.time_budget) {}

  void seed(const Solution& sol, Time makespan) {
    best_ = makespan;
    witness_ = sol;
    witness_from_search_ = false;
  }

  OracleResult run() {
    std::vector<std::size_t> choice(n_ + 1, 0);
    machine_of_.assign(n_ + 1, 0);
    while (!stopped_) {
      for (OpId i = 1; i <= n_; ++i) machine_of_[i] = inst_.op(i).eligible[choice[i]].first;
      ++assignments_;
      search_assignment();
      // Mixed-radix increment, operation 1 is the least significant digit.
      OpId i = 1;
      while (i <= n_ && ++choice[i] == inst_.op(i).eligible.size()) choice[i++] = 0;
      if (i > n_) break;
    }

    OracleResult res;
    res.status = stopped_ ? OracleStatus::LimitExceeded : OracleStatus::Complete;
    res.explored = explored_;
    res.assignments = assignments_;
    if (witness_) {
      res.optimal_makespan = best_;
      res.witness = witness_;
    }
    return res;
  }

 private:
  // Prune at `cutoff()`; until the search itself has produced a witness,
  // schedules tying a seeded incumbent are still accepted.
  Time cutoff() const {
    if (!witness_) return std::numeric_limits<Time>::max();
    return witness_from_search_ ? best_ : best_ + 1;
  }

  void search_assignment() {
    load_.assign(m_ + 1, 0);
    for (OpId i = 1; i <= n_; ++i) ++load_[machine_of_[i]];

    // Position on machine k is at most load_[k], and psi is nonincreasing in r.
    min_duration_.assign(n_ + 1, 0);
    for (OpId i = 1; i <= n_; ++i)
      min_duration_[i] = psi(alpha_, *inst_.processing_time(i, machine_of_[i]), load_[machine_of_[i]]);
    tail_.assign(n_ + 1, 0);
    const auto order = topological_order_cache();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Time longest = 0;
      for (OpId j : inst_.successors(*it)) longest = std::max(longest, tail_[j]);
      tail_[*it] = min_duration_[*it] + longest;
    }

    placed_.assign(n_ + 1, false);
    completion_.assign(n_ + 1, 0);
    machine_ready_.assign(m_ + 1, 0);
    machine_remaining_.assign(m_ + 1, 0);
    for (OpId i = 1; i <= n_; ++i) machine_remaining_[machine_of_[i]] += min_duration_[i];
    sequences_.assign(m_ + 1, {});
    dfs(0, 0, 0, 0);
  }

  const std::vector<OpId>& topological_order_cache() {
    if (topo_.empty()) {
      // Kahn order; the instance is a DAG by construction.
      std::vector<int> indegree(n_ + 1, 0);
      for (const Arc& a : inst_.precedence()) ++indegree[a.to];
      std::vector<OpId> ready;
      for (OpId i = n_; i >= 1; --i)
        if (indegree[i] == 0) ready.push_back(i);
      while (!ready.empty()) {
        const OpId v = ready.back();
        ready.pop_back();
        topo_.push_back(v);
        for (OpId w : inst_.successors(v))
          if (--indegree[w] == 0) ready.push_back(w);
      }
    }
    return topo_;
  }

  Time op_ready(OpId v) const {
    Time ready = 0;
    for (OpId u : inst_.predecessors(v)) {
      if (!placed_[u]) return -1;
      ready = std::max(ready, completion_[u]);
    }
    return ready;
  }

  bool out_of_budget() {
    if (explored_ >= limits_.max_combinations) return true;
    if ((nodes_++ & 0xFFF) == 0 && Clock::now() > deadline_) return true;
    return false;
  }

  void dfs(int placed_count, Time last_start, OpId last_op, Time makespan) {
    if (stopped_) return;
    if (out_of_budget()) {
      stopped_ = true;
      return;
    }
    if (placed_count == n_) {
      ++explored_;
      if (makespan < cutoff()) {
        best_ = makespan;
        witness_from_search_ = true;
        Solution sol = Solution::empty(inst_);
        sol.sequences = sequences_;
        for (MachineId k = 1; k <= m_; ++k)
          for (OpId i : sequences_[k]) sol.assignment[i] = k;
        witness_ = std::move(sol);
      }
      return;
    }

    // Lower bound from machine workloads and precedence tails.
    Time bound = makespan;
    for (MachineId k = 1; k <= m_; ++k) bound = std::max(bound, machine_ready_[k] + machine_remaining_[k]);
    std::vector<std::pair<OpId, Time>> ready;
    for (OpId v = 1; v <= n_; ++v) {
      if (placed_[v]) continue;
      const Time r = op_ready(v);
      if (r < 0) continue;
      const Time start = std::max(r, machine_ready_[machine_of_[v]]);
      bound = std::max(bound, start + tail_[v]);
      ready.emplace_back(v, start);
    }
    if (bound >= cutoff()) return;

    for (const auto& [v, start] : ready) {
      // Canonical placement order: strictly increasing (start, op id).
      if (start < last_start || (start == last_start && v <= last_op)) continue;
      const MachineId k = machine_of_[v];
      const int position = static_cast<int>(sequences_[k].size()) + 1;
      const Time duration = psi(alpha_, *inst_.processing_time(v, k), position);

      const Time saved_ready = machine_ready_[k];
      placed_[v] = true;
      completion_[v] = start + duration;
      machine_ready_[k] = start + duration;
      machine_remaining_[k] -= min_duration_[v];
      sequences_[k].push_back(v);

      dfs(placed_count + 1, start, v, std::max(makespan, start + duration));

      sequences_[k].pop_back();
      machine_remaining_[k] += min_duration_[v];
      machine_ready_[k] = saved_ready;
      placed_[v] = false;
      if (stopped_) return;
    }
  }

  const Instance& inst_;
  LearningRate alpha_;
  OracleLimits limits_;
  int n_;
  int m_;
  Clock::time_point deadline_;

  std::vector<OpId> topo_;
  std::vector<MachineId> machine_of_;
  std::vector<int> load_;
  std::vector<Time> min_duration_;
  std::vector<Time> tail_;
  std::vector<bool> placed_;
  std::vector<Time> completion_;
  std::vector<Time> machine_ready_;
  std::vector<Time> machine_remaining_;
  std::vector<std::vector<OpId>> sequences_;

  Time best_ = std::numeric_limits<Time>::max();
  std::optional<Solution> witness_;
  bool witness_from_search_ = false;
  bool stopped_ = false;
  std::uint64_t explored_ = 0;
  std::uint64_t assignments_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

OracleResult brute_force_optimal(const Instance& inst, LearningRate alpha, const OracleLimits& limits) {
  const double estimate = estimate_combinations(inst);
  if (!limits.force && estimate > limits.max_estimated_combinations) {
    OracleResult refused;
    refused.status = OracleStatus::Refused;
    refused.estimated_combinations = estimate;
    return refused;
  }
  Enumerator e(inst, alpha, limits);
  if (limits.seed_with_heuristics) {
    const BestConstructive best = best_constructive(inst, alpha);
    e.seed(best.result.solution, best.result.makespan);
  }
  OracleResult res = e.run();
  res.estimated_combinations = estimate;
  return res;
}

std::string oracle_result_to_json(const OracleResult& result, LearningRate alpha) {
  nlohmann::ordered_json j;
  j["status"] = to_string(result.status);
  j["alpha"] = alpha.value();
  if (result.witness) {
    j["optimal_makespan"] = result.optimal_makespan;
    nlohmann::ordered_json seq = nlohmann::ordered_json::object();
    for (std::size_t k = 1; k < result.witness->sequences.size(); ++k)
      seq[std::to_string(k)] = result.witness->sequences[k];
    j["witness"] = {{"sequences", seq}};
  }
  j["explored"] = result.explored;
  j["assignments"] = result.assignments;
  j["estimated_combinations"] = result.estimated_combinations;
  return j.dump(2) + "\n";
}

}  // namespace fjsched
