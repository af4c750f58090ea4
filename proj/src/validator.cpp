#include "fjsched/validator.hpp"

#include <algorithm>
#include <string>

#include "json.hpp"

namespace fjsched {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Structure: return "structure";
    case ViolationKind::Assignment: return "assignment";
    case ViolationKind::Eligibility: return "eligibility";
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::Precedence: return "precedence";
    case ViolationKind::Overlap: return "overlap";
    case ViolationKind::StartTime: return "start_time";
  }
  return "unknown";
}

namespace {

std::string op_str(OpId i) { return "operation " + std::to_string(i); }

}  // namespace

ValidationReport validate(const Instance& inst, LearningRate alpha, const Solution& sol,
                          std::optional<std::span<const Time>> explicit_start) {
  ValidationReport rep;
  const int n = inst.op_count();
  const int m = inst.machine_count();
  auto fail = [&](ViolationKind kind, std::string detail) {
    rep.violations.push_back({kind, std::move(detail)});
  };

  if (static_cast<int>(sol.assignment.size()) != n + 1 || static_cast<int>(sol.sequences.size()) != m + 1) {
    fail(ViolationKind::Structure, "solution has " + std::to_string(sol.assignment.size()) + " assignment slots and " +
                                       std::to_string(sol.sequences.size()) + " sequence slots, expected " +
                                       std::to_string(n + 1) + " and " + std::to_string(m + 1));
    return rep;
  }

  // Each operation exactly once, on its assigned and an eligible machine.
  std::vector<int> count(n + 1, 0);
  std::vector<int> pos(n + 1, 0);
  std::vector<MachineId> on(n + 1, 0);
  for (MachineId k = 1; k <= m; ++k) {
    for (std::size_t r = 0; r < sol.sequences[k].size(); ++r) {
      const OpId i = sol.sequences[k][r];
      if (i < 1 || i > n) {
        fail(ViolationKind::Structure, "machine " + std::to_string(k) + " lists unknown operation " + std::to_string(i));
        continue;
      }
      ++count[i];
      on[i] = k;
      pos[i] = static_cast<int>(r) + 1;
    }
  }
  for (OpId i = 1; i <= n; ++i) {
    if (count[i] == 0) fail(ViolationKind::Assignment, op_str(i) + " is on no machine");
    if (count[i] > 1) fail(ViolationKind::Assignment, op_str(i) + " appears " + std::to_string(count[i]) + " times");
    if (count[i] >= 1 && sol.assignment[i] != on[i])
      fail(ViolationKind::Assignment, op_str(i) + " assigned to machine " + std::to_string(sol.assignment[i]) +
                                          " but sequenced on machine " + std::to_string(on[i]));
    if (count[i] >= 1 && !inst.eligible(i, on[i]))
      fail(ViolationKind::Eligibility, "machine " + std::to_string(on[i]) + " cannot process " + op_str(i));
  }
  if (!rep.violations.empty()) return rep;

  rep.duration.assign(n + 1, 0);
  for (OpId i = 1; i <= n; ++i) rep.duration[i] = psi(alpha, *inst.processing_time(i, on[i]), pos[i]);

  // Machine predecessor of each operation.
  std::vector<OpId> machine_prev(n + 1, 0);
  for (MachineId k = 1; k <= m; ++k)
    for (std::size_t r = 1; r < sol.sequences[k].size(); ++r)
      machine_prev[sol.sequences[k][r]] = sol.sequences[k][r - 1];

  if (explicit_start) {
    const auto starts = *explicit_start;
    if (static_cast<int>(starts.size()) != n + 1) {
      fail(ViolationKind::Structure, "expected " + std::to_string(n + 1) + " start times (index 0 unused)");
      return rep;
    }
    rep.start.assign(starts.begin(), starts.end());
    for (OpId i = 1; i <= n; ++i)
      if (rep.start[i] < 0) fail(ViolationKind::StartTime, op_str(i) + " starts at " + std::to_string(rep.start[i]));
    for (const Arc& a : inst.precedence())
      if (rep.start[a.from] + rep.duration[a.from] > rep.start[a.to])
        fail(ViolationKind::Precedence, op_str(a.to) + " starts at " + std::to_string(rep.start[a.to]) + " before " +
                                            op_str(a.from) + " ends at " +
                                            std::to_string(rep.start[a.from] + rep.duration[a.from]));
    for (OpId j = 1; j <= n; ++j) {
      const OpId i = machine_prev[j];
      if (i != 0 && rep.start[i] + rep.duration[i] > rep.start[j])
        fail(ViolationKind::Overlap, op_str(j) + " overlaps its machine predecessor " + std::to_string(i));
    }
  } else {
    // Kahn pass over precedence + machine predecessors.
    std::vector<std::vector<OpId>> out(n + 1);
    std::vector<int> indegree(n + 1, 0);
    for (const Arc& a : inst.precedence()) {
      out[a.from].push_back(a.to);
      ++indegree[a.to];
    }
    for (OpId j = 1; j <= n; ++j) {
      if (machine_prev[j] != 0) {
        out[machine_prev[j]].push_back(j);
        ++indegree[j];
      }
    }
    rep.start.assign(n + 1, 0);
    std::vector<OpId> ready;
    for (OpId i = 1; i <= n; ++i)
      if (indegree[i] == 0) ready.push_back(i);
    int done = 0;
    while (!ready.empty()) {
      const OpId i = ready.back();
      ready.pop_back();
      ++done;
      const Time end = rep.start[i] + rep.duration[i];
      for (OpId j : out[i]) {
        rep.start[j] = std::max(rep.start[j], end);
        if (--indegree[j] == 0) ready.push_back(j);
      }
    }
    if (done != n) {
      std::string stuck;
      for (OpId i = 1; i <= n && stuck.size() < 80; ++i)
        if (indegree[i] > 0) stuck += (stuck.empty() ? "" : " ") + std::to_string(i);
      fail(ViolationKind::Cycle, "machine order contradicts precedences; unresolved operations: " + stuck);
    }
  }

  if (rep.violations.empty()) {
    rep.feasible = true;
    for (OpId i = 1; i <= n; ++i) rep.makespan = std::max(rep.makespan, rep.start[i] + rep.duration[i]);
  }
  return rep;
}

std::string validation_report_to_json(const ValidationReport& report) {
  nlohmann::ordered_json j;
  j["feasible"] = report.feasible;
  if (report.feasible) j["makespan"] = report.makespan;
  auto& v = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& violation : report.violations)
    v.push_back({{"kind", to_string(violation.kind)}, {"detail", violation.detail}});
  return j.dump(2) + "\n";
}

}  // namespace fjsched
