#include <map>
#include <sstream>

#include "doctest.h"
#include "fjsched/heuristics.hpp"
#include "fjsched/model_export.hpp"
#include "fjsched/validator.hpp"
#include "support.hpp"

using namespace fjsched;

namespace {

// Minimal reader for the LP text we emit: returns each row as
// (name, terms, sense, rhs). Written against the file, not the row structs.
struct ParsedRow {
  std::string name;
  std::vector<std::pair<double, std::string>> terms;
  std::string sense;
  double rhs = 0.0;
};

struct ParsedLp {
  std::string objective_var;
  std::vector<ParsedRow> rows;
  std::vector<std::string> binaries;
};

ParsedLp parse_lp(const std::string& text) {
  ParsedLp lp;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::string pending;
  auto flush = [&]() {
    if (pending.empty()) return;
    ParsedRow row;
    const auto colon = pending.find(':');
    row.name = pending.substr(0, colon);
    row.name.erase(0, row.name.find_first_not_of(' '));
    std::istringstream body(pending.substr(colon + 1));
    std::string tok;
    double sign = 1.0;
    double coef = 1.0;
    bool have_coef = false;
    while (body >> tok) {
      if (tok == "+") {
        sign = 1.0;
      } else if (tok == "-") {
        sign = -1.0;
      } else if (tok == "<=" || tok == ">=" || tok == "=") {
        row.sense = tok;
        body >> row.rhs;
      } else if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
        coef = std::stod(tok);
        have_coef = true;
      } else {
        row.terms.emplace_back(sign * (have_coef ? coef : 1.0), tok);
        sign = 1.0;
        coef = 1.0;
        have_coef = false;
      }
    }
    lp.rows.push_back(row);
    pending.clear();
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Minimize" || line == "Subject To" || line == "Binaries" || line == "End") {
      flush();
      section = line;
      continue;
    }
    if (section == "Minimize") {
      lp.objective_var = line.substr(line.find(':') + 2);
    } else if (section == "Subject To") {
      const bool continuation = line.rfind("   ", 0) == 0;
      if (!continuation) flush();
      pending += ' ' + line;
    } else if (section == "Binaries") {
      std::istringstream names(line);
      std::string name;
      while (names >> name) lp.binaries.push_back(name);
    }
  }
  flush();
  return lp;
}

int violated_rows(const ParsedLp& lp, const std::map<std::string, double>& value) {
  int bad = 0;
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    for (const auto& [c, name] : row.terms) {
      const auto it = value.find(name);
      lhs += c * (it == value.end() ? 0.0 : it->second);
    }
    const bool ok = row.sense == "<=" ? lhs <= row.rhs + 1e-6 : row.sense == ">=" ? lhs >= row.rhs - 1e-6
                                                                                  : std::abs(lhs - row.rhs) <= 1e-6;
    if (!ok) {
      ++bad;
      MESSAGE("violated: " << row.name << " lhs=" << lhs << " rhs=" << row.rhs);
    }
  }
  return bad;
}

std::map<std::string, double> as_map(const WarmStart& ws) {
  return std::map<std::string, double>(ws.milp_values.begin(), ws.milp_values.end());
}

}  // namespace

TEST_CASE("counts on the example instance") {
  const Instance inst = fjtest::example_instance();
  const MilpArtifact milp = emit_milp(inst, LearningRate(0.5));
  const ModelSizes sizes = count_model_sizes(inst);
  // |O_1| = 9, |O_2| = 9, |O_3| = 8.
  CHECK(sizes.binary == 81 + 81 + 64);
  CHECK(sizes.interval - sizes.binary == 12);
  CHECK(milp.binary_count == sizes.binary);
  CHECK(milp.continuous_count == sizes.continuous);
  CHECK(milp.constraint_count == sizes.milp_constraints);
  CHECK(milp.big_m == 100 * (10 + 20 + 15 + 20 + 15 + 5 + 10 + 20 + 30 + 30 + 40 + 10 + 20 + 30 + 10 + 20 + 40 + 10 +
                             40 + 20 + 10 + 20 + 10 + 20 + 10 + 15));
  const CpArtifact cp = emit_cp(inst, LearningRate(0.5));
  CHECK(cp.interval_count == sizes.interval);
  CHECK(cp.constraint_count == sizes.cp_constraints);
}

TEST_CASE("formula counts equal emitted counts on random instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance inst = fjtest::random_tiny(seed, 9, 4);
    const ModelSizes sizes = count_model_sizes(inst);
    const MilpArtifact milp = emit_milp(inst, LearningRate(0.2));
    const CpArtifact cp = emit_cp(inst, LearningRate(0.2));
    std::int64_t sum_sq = 0;
    for (MachineId k = 1; k <= inst.machine_count(); ++k) {
      const auto n = static_cast<std::int64_t>(inst.eligible_ops(k).size());
      sum_sq += n * n;
    }
    CHECK(sizes.binary == sum_sq);
    CHECK(sizes.interval == sum_sq + inst.op_count());
    CHECK(milp.binary_count == sizes.binary);
    CHECK(milp.continuous_count == sizes.continuous);
    CHECK(milp.constraint_count == sizes.milp_constraints);
    CHECK(cp.interval_count == sizes.interval);
    CHECK(cp.constraint_count == sizes.cp_constraints);
    const ParsedLp lp = parse_lp(milp.lp_text);
    CHECK(lp.rows.size() == milp.rows.size());
    CHECK(static_cast<std::int64_t>(lp.binaries.size()) == sizes.binary);
  }
}

TEST_CASE("warm starts satisfy the emitted LP text") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Instance inst = fjtest::random_tiny(seed, 7, 3);
    const LearningRate a(fjsched::kAlphaPresets[seed % 5]);
    const BestConstructive best = best_constructive(inst, a);
    const WarmStart ws = warm_start_export(best.result.solution, inst, a);
    const MilpArtifact milp = emit_milp(inst, a);
    const auto values = as_map(ws);
    const ParsedLp lp = parse_lp(milp.lp_text);
    CHECK(lp.objective_var == "Cmax");
    CHECK(violated_rows(lp, values) == 0);
    CHECK(check_milp_values(milp, values).empty());
    CHECK(values.at("Cmax") == static_cast<double>(validate(inst, a, best.result.solution).makespan));
  }
}

TEST_CASE("the worked example solutions satisfy the model") {
  const Instance inst = fjtest::example_instance();
  for (auto [sol, a] : {std::pair{fjtest::example_solution_alpha0(inst), 0.0}, std::pair{fjtest::example_solution_alpha05(inst), 0.5}}) {
    const MilpArtifact milp = emit_milp(inst, LearningRate(a));
    const auto values = as_map(warm_start_export(sol, inst, LearningRate(a)));
    CHECK(violated_rows(parse_lp(milp.lp_text), values) == 0);
  }
}

TEST_CASE("a wrong makespan or a swapped order violates the model") {
  const Instance inst = fjtest::example_instance();
  const LearningRate a(0.5);
  const MilpArtifact milp = emit_milp(inst, a);
  auto values = as_map(warm_start_export(fjtest::example_solution_alpha05(inst), inst, a));
  values["Cmax"] = 5015;
  const auto bad = check_milp_values(milp, values);
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().row.rfind("mkspan_", 0) == 0);

  auto overlap = as_map(warm_start_export(fjtest::example_solution_alpha05(inst), inst, a));
  overlap["s_4"] = 1000;  // overlaps op 8 on machine 2
  CHECK_FALSE(check_milp_values(milp, overlap).empty());

  auto fractional = as_map(warm_start_export(fjtest::example_solution_alpha05(inst), inst, a));
  fractional["x_1_1_1"] = 0.5;
  CHECK_FALSE(check_milp_values(milp, fractional).empty());
}

TEST_CASE("emission is deterministic and self-describing") {
  const Instance inst = fjtest::example_instance();
  const LearningRate a(0.3);
  CHECK(emit_milp(inst, a).lp_text == emit_milp(inst, a).lp_text);
  CHECK(emit_cp(inst, a).model_text == emit_cp(inst, a).model_text);
  CHECK(emit_cp(inst, a, CpSyntax::Opl).model_text == emit_cp(inst, a, CpSyntax::Opl).model_text);
  CHECK(milp_manifest_json(emit_milp(inst, a)) == milp_manifest_json(emit_milp(inst, a)));

  const CpArtifact cp = emit_cp(inst, LearningRate(0.5));
  // a_4_2_3 has size psi(0.5, 30, 3).
  const auto it = std::find_if(cp.intervals.begin(), cp.intervals.end(),
                               [](const IntervalInfo& iv) { return iv.name == "a_4_2_3"; });
  REQUIRE(it != cp.intervals.end());
  CHECK(it->size == 1732);
  CHECK(it->optional);
  CHECK(cp.model_text.find("a_4_2_3") != std::string::npos);
}
