#include "fjsched/bench.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "fjsched/heuristics.hpp"

namespace fjsched {

const char* to_string(Winner w) {
  switch (w) {
    case Winner::Est: return "EST";
    case Winner::Ect: return "ECT";
    case Winner::Both: return "both";
  }
  return "unknown";
}

Winner winner_of(Time est, Time ect) {
  if (est == ect) return Winner::Both;
  return est < ect ? Winner::Est : Winner::Ect;
}

BenchRow bench_instance(const std::string& name, const Instance& inst, LearningRate alpha) {
  using Clock = std::chrono::steady_clock;
  BenchRow row;
  row.instance = name;
  row.alpha = alpha.value();
  auto t0 = Clock::now();
  row.est_makespan = est_schedule(inst, alpha).makespan;
  auto t1 = Clock::now();
  row.ect_makespan = ect_schedule(inst, alpha).makespan;
  auto t2 = Clock::now();
  row.est_seconds = std::chrono::duration<double>(t1 - t0).count();
  row.ect_seconds = std::chrono::duration<double>(t2 - t1).count();
  row.winner = winner_of(row.est_makespan, row.ect_makespan);
  return row;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
  std::vector<BenchSummary> out;
  for (const BenchRow& row : rows) {
    BenchSummary* s = nullptr;
    for (auto& existing : out)
      if (existing.alpha == row.alpha) s = &existing;
    if (!s) {
      out.push_back({});
      s = &out.back();
      s->alpha = row.alpha;
    }
    ++s->rows;
    if (row.winner != Winner::Ect) ++s->est_wins;
    if (row.winner != Winner::Est) ++s->ect_wins;
    s->est_mean += static_cast<double>(row.est_makespan);
    s->ect_mean += static_cast<double>(row.ect_makespan);
  }
  for (auto& s : out) {
    s.est_mean /= s.rows;
    s.ect_mean /= s.rows;
  }
  return out;
}

namespace {

std::string num(double v, const char* format) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

std::string bench_csv(const std::vector<BenchRow>& rows, bool with_timings) {
  std::ostringstream out;
  out << "instance,alpha,est_makespan,ect_makespan,winner";
  if (with_timings) out << ",est_seconds,ect_seconds";
  out << '\n';
  for (const BenchRow& r : rows) {
    out << r.instance << ',' << num(r.alpha, "%g") << ',' << r.est_makespan << ',' << r.ect_makespan << ','
        << to_string(r.winner);
    if (with_timings) out << ',' << num(r.est_seconds, "%.6f") << ',' << num(r.ect_seconds, "%.6f");
    out << '\n';
  }
  for (const BenchSummary& s : summarize(rows)) {
    out << "wins," << num(s.alpha, "%g") << ',' << s.est_wins << ',' << s.ect_wins << ",\n";
    out << "mean," << num(s.alpha, "%g") << ',' << num(s.est_mean, "%.2f") << ',' << num(s.ect_mean, "%.2f")
        << ",\n";
  }
  return out.str();
}

}  // namespace fjsched
