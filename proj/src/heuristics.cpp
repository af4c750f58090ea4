#include "fjsched/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "fjsched/model_export.hpp"
#include "fjsched/validator.hpp"

namespace fjsched {

namespace {

constexpr Time kNotReady = std::numeric_limits<Time>::max();

enum class Rule { EarliestStart, EarliestCompletion };

/// Partial schedule shared by both dispatching rules.
struct ScheduleState {
  std::vector<bool> scheduled;      // by op id
  std::vector<Time> completion;     // c_v, by op id
  std::vector<Time> op_ready;       // r^op_v, by op id
  std::vector<Time> machine_ready;  // r^mac_k, by machine id
  std::vector<int> next_position;   // g_k, by machine id
  Solution solution;
  int remaining = 0;

  explicit ScheduleState(const Instance& inst)
      : scheduled(inst.op_count() + 1, false),
        completion(inst.op_count() + 1, 0),
        op_ready(inst.op_count() + 1, kNotReady),
        machine_ready(inst.machine_count() + 1, 0),
        next_position(inst.machine_count() + 1, 1),
        solution(Solution::empty(inst)),
        remaining(inst.op_count()) {}

  void refresh_ready_times(const Instance& inst) {
    for (OpId v = 1; v <= inst.op_count(); ++v) {
      if (scheduled[v]) continue;
      Time ready = 0;
      for (OpId u : inst.predecessors(v)) {
        if (!scheduled[u]) {
          ready = kNotReady;
          break;
        }
        ready = std::max(ready, completion[u]);
      }
      op_ready[v] = ready;
    }
  }

  void place(OpId v, MachineId k, Time duration) {
    const Time start = std::max(op_ready[v], machine_ready[k]);
    completion[v] = start + duration;
    machine_ready[k] = completion[v];
    ++next_position[k];
    solution.assignment[v] = k;
    solution.sequences[k].push_back(v);
    scheduled[v] = true;
    --remaining;
  }
};

ScheduleResult run_dispatch(const Instance& inst, LearningRate alpha, Rule rule) {
  ScheduleState state(inst);
  Time makespan = 0;

  while (state.remaining > 0) {
    state.refresh_ready_times(inst);

    // Lexicographic key per rule; smaller wins.
    //   EST: (start, duration, op, machine)
    //   ECT: (completion, op, machine)
    using Key = std::tuple<Time, Time, OpId, MachineId>;
    Key best{kNotReady, kNotReady, 0, 0};
    Time best_duration = 0;
    for (OpId v = 1; v <= inst.op_count(); ++v) {
      if (state.scheduled[v] || state.op_ready[v] == kNotReady) continue;
      for (const auto& [k, p] : inst.op(v).eligible) {
        const Time start = std::max(state.op_ready[v], state.machine_ready[k]);
        const Time duration = psi(alpha, p, state.next_position[k]);
        const Key key = rule == Rule::EarliestStart ? Key{start, duration, v, k}
                                                    : Key{start + duration, 0, v, k};
        if (key < best) {
          best = key;
          best_duration = duration;
        }
      }
    }
    const OpId v = std::get<2>(best);
    const MachineId k = std::get<3>(best);
    state.place(v, k, best_duration);
    makespan = std::max(makespan, state.completion[v]);
  }

  ScheduleResult result;
  result.solution = std::move(state.solution);
  result.graph = build_solution_graph(inst, result.solution, alpha);
  result.critical = critical_path(result.graph);
  result.makespan = makespan;
  return result;
}

}  // namespace

ScheduleResult est_schedule(const Instance& inst, LearningRate alpha) {
  return run_dispatch(inst, alpha, Rule::EarliestStart);
}

ScheduleResult ect_schedule(const Instance& inst, LearningRate alpha) {
  return run_dispatch(inst, alpha, Rule::EarliestCompletion);
}

BestConstructive best_constructive(const Instance& inst, LearningRate alpha) {
  BestConstructive best;
  ScheduleResult est = est_schedule(inst, alpha);
  ScheduleResult ect = ect_schedule(inst, alpha);
  best.est_makespan = est.makespan;
  best.ect_makespan = ect.makespan;
  if (ect.makespan < est.makespan) {
    best.chosen = HeuristicKind::Ect;
    best.result = std::move(ect);
  } else {
    best.chosen = HeuristicKind::Est;
    best.result = std::move(est);
  }
  return best;
}

WarmStart warm_start_export(const Solution& sol, const Instance& inst, LearningRate alpha) {
  const ValidationReport report = validate(inst, alpha, sol);
  if (!report.feasible) {
    std::string detail = "cannot export an infeasible solution";
    if (!report.violations.empty()) detail += ": " + report.violations.front().detail;
    throw InfeasibleError(detail);
  }

  std::map<std::string, double> value;
  std::vector<int> position(inst.op_count() + 1, 0);
  for (MachineId k = 1; k <= inst.machine_count(); ++k) {
    const auto& q = sol.sequences[k];
    Time machine_end = 0;
    for (std::size_t r = 0; r < q.size(); ++r) {
      position[q[r]] = static_cast<int>(r) + 1;
      machine_end = std::max(machine_end, report.start[q[r]] + report.duration[q[r]]);
    }
    // Empty positions start when the machine is released, so the machine
    // order and makespan rows hold with zero durations.
    const int capacity = static_cast<int>(inst.eligible_ops(k).size());
    for (int r = 1; r <= capacity; ++r)
      value[h_var(k, r)] = r <= static_cast<int>(q.size()) ? static_cast<double>(report.start[q[r - 1]])
                                                          : static_cast<double>(machine_end);
  }
  for (OpId i = 1; i <= inst.op_count(); ++i) {
    value[x_var(i, sol.assignment[i], position[i])] = 1.0;
    value[s_var(i)] = static_cast<double>(report.start[i]);
    value[pp_var(i)] = static_cast<double>(report.duration[i]);
  }
  value[kMakespanVar] = static_cast<double>(report.makespan);

  WarmStart ws;
  const auto variables = milp_variables(inst);
  std::ostringstream mst;
  mst << "<?xml version = \"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
      << "<CPLEXSolutions version=\"1.2\">\n"
      << " <CPLEXSolution version=\"1.2\">\n"
      << "  <header problemName=\"fjs_learning\" solutionName=\"warmstart\" objectiveValue=\""
      << report.makespan << "\"/>\n"
      << "  <variables>\n";
  for (std::size_t idx = 0; idx < variables.size(); ++idx) {
    const auto it = value.find(variables[idx].name);
    const double v = it == value.end() ? 0.0 : it->second;
    ws.milp_values.emplace_back(variables[idx].name, v);
    mst << "   <variable name=\"" << variables[idx].name << "\" index=\"" << idx << "\" value=\""
        << static_cast<long long>(v) << "\"/>\n";
  }
  mst << "  </variables>\n"
      << " </CPLEXSolution>\n"
      << "</CPLEXSolutions>\n";
  ws.mst_text = mst.str();

  std::ostringstream cp;
  cp << "# CP starting point: interval present start end\n";
  for (OpId i = 1; i <= inst.op_count(); ++i) {
    const Time start = report.start[i];
    const Time end = start + report.duration[i];
    cp << o_interval(i) << " present " << start << ' ' << end << '\n';
    cp << a_interval(i, sol.assignment[i], position[i]) << " present " << start << ' ' << end << '\n';
  }
  ws.cp_text = cp.str();
  return ws;
}

}  // namespace fjsched
