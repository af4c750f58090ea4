#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fjsched/instance.hpp"
#include "fjsched/learning.hpp"
#include "fjsched/solution_graph.hpp"

namespace fjsched {

/// {"assignment": {"op": machine}, "sequences": {"machine": [ops]},
///  "makespan": n, "alpha": a}
std::string solution_to_json(const Solution& sol, Time makespan, LearningRate alpha);

struct SolutionFile {
  Solution solution;
  std::optional<Time> makespan;
  std::optional<double> alpha;
};

/// Reads the sequences (the assignment is rebuilt from them and, if present,
/// checked for agreement). Throws ParseError or InfeasibleError.
SolutionFile solution_from_json(const Instance& inst, std::string_view text);

/// Gantt table: op,machine,position,start,actual_time,end,critical.
/// Rows are ordered by machine, then position. With `original_units` times are
/// divided by 100 and printed with two decimals.
std::string gantt_csv(const Instance& inst, const Solution& sol, LearningRate alpha,
                      bool original_units = false);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace fjsched
