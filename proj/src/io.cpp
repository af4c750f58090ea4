#include "fjsched/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fjsched/validator.hpp"

namespace fjsched {

using json = nlohmann::ordered_json;

std::string solution_to_json(const Solution& sol, Time makespan, LearningRate alpha) {
  json j;
  json assignment = json::object();
  for (std::size_t i = 1; i < sol.assignment.size(); ++i) assignment[std::to_string(i)] = sol.assignment[i];
  json sequences = json::object();
  for (std::size_t k = 1; k < sol.sequences.size(); ++k) sequences[std::to_string(k)] = sol.sequences[k];
  j["assignment"] = std::move(assignment);
  j["sequences"] = std::move(sequences);
  j["makespan"] = makespan;
  j["alpha"] = alpha.value();
  return j.dump(2) + "\n";
}

namespace {

int parse_key(const std::string& key, const char* what) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw ParseError(0, std::string("bad ") + what + " key '" + key + "'");
  return value;
}

}  // namespace

SolutionFile solution_from_json(const Instance& inst, std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("solution JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("sequences") || !j["sequences"].is_object())
    throw ParseError(0, "solution JSON needs a \"sequences\" object");

  std::vector<std::vector<OpId>> seqs(inst.machine_count() + 1);
  try {
    for (const auto& [key, ops] : j["sequences"].items()) {
      const int k = parse_key(key, "machine");
      if (k < 1 || k > inst.machine_count())
        throw InfeasibleError("solution names machine " + key + " but the instance has " +
                              std::to_string(inst.machine_count()));
      seqs[k] = ops.get<std::vector<OpId>>();
    }
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("solution JSON: ") + e.what());
  }

  SolutionFile file;
  file.solution = Solution::from_sequences(inst, std::move(seqs));
  if (j.contains("assignment")) {
    try {
      for (const auto& [key, machine] : j["assignment"].items()) {
        const int i = parse_key(key, "operation");
        const auto k = machine.get<MachineId>();
        if (i < 1 || i > inst.op_count() || file.solution.assignment[i] != k)
          throw InfeasibleError("assignment of operation " + key + " disagrees with the sequences");
      }
    } catch (const json::exception& e) {
      throw ParseError(0, std::string("solution JSON: ") + e.what());
    }
  }
  if (j.contains("makespan") && j["makespan"].is_number_integer()) file.makespan = j["makespan"].get<Time>();
  if (j.contains("alpha") && j["alpha"].is_number()) file.alpha = j["alpha"].get<double>();
  return file;
}

std::string gantt_csv(const Instance& inst, const Solution& sol, LearningRate alpha, bool original_units) {
  const SolutionGraph g = build_solution_graph(inst, sol, alpha);
  const CriticalPathResult cp = critical_path(g);
  const std::vector<Time> start = start_times(g, cp.topo_order);
  const std::set<OpId> critical(cp.critical_path.begin(), cp.critical_path.end());

  auto fmt = [&](Time t) {
    if (!original_units) return std::to_string(t);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(t / 100), static_cast<long long>(t % 100));
    return std::string(buf);
  };

  std::ostringstream out;
  out << "op,machine,position,start,actual_time,end,critical\n";
  for (MachineId k = 1; k <= inst.machine_count(); ++k) {
    for (std::size_t r = 0; r < sol.sequences[k].size(); ++r) {
      const OpId i = sol.sequences[k][r];
      out << i << ',' << k << ',' << r + 1 << ',' << fmt(start[i]) << ',' << fmt(g.weight[i]) << ','
          << fmt(start[i] + g.weight[i]) << ',' << (critical.count(i) ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace fjsched
