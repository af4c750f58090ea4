#pragma once

#include <string>
#include <vector>

#include "fjsched/instance.hpp"
#include "fjsched/learning.hpp"

namespace fjsched {

enum class Winner { Est, Ect, Both };

const char* to_string(Winner w);

/// One (instance, alpha) row of the heuristic comparison.
struct BenchRow {
  std::string instance;
  double alpha = 0.0;
  Time est_makespan = 0;
  Time ect_makespan = 0;
  Winner winner = Winner::Both;
  double est_seconds = 0.0;
  double ect_seconds = 0.0;
};

/// A side wins iff its makespan is <= the other's, so ties credit both.
Winner winner_of(Time est, Time ect);

BenchRow bench_instance(const std::string& name, const Instance& inst, LearningRate alpha);

struct BenchSummary {
  double alpha = 0.0;
  int est_wins = 0;
  int ect_wins = 0;
  double est_mean = 0.0;
  double ect_mean = 0.0;
  int rows = 0;
};

/// Per-alpha wins and means, in order of first appearance of each alpha.
std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows);

/// Rows followed by `wins` and `mean` footer lines per alpha. Runtimes are
/// only written with `with_timings`, keeping the default output reproducible.
std::string bench_csv(const std::vector<BenchRow>& rows, bool with_timings = false);

}  // namespace fjsched
