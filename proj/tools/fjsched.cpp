// fjsched: command-line front-end for the scheduling library.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fjsched/bench.hpp"
#include "fjsched/heuristics.hpp"
#include "fjsched/instance.hpp"
#include "fjsched/io.hpp"
#include "fjsched/jobs_format.hpp"
#include "fjsched/model_export.hpp"
#include "fjsched/oracle.hpp"
#include "fjsched/validator.hpp"

namespace fs = std::filesystem;
using namespace fjsched;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kInfeasible = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance load_instance(const std::string& path, const std::string& format) {
  const std::string text = read_text_file(path);
  std::string f = format;
  if (f == "auto") f = fs::path(path).extension() == ".json" ? "json" : "fjs";
  if (f == "json") return instance_from_json(text);
  if (f == "jobs") return parse_jobs_format(text);
  return parse_instance(text);
}

// Writes to `path`, or stdout when empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::string original_units(Time t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(t / 100), static_cast<long long>(t % 100));
  return buf;
}

std::vector<fs::path> instance_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".fjs" || ext == ".json" || ext == ".txt")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible job shop scheduling with sequencing flexibility and position-based learning"};
  app.require_subcommand(1);

  double alpha = 0.0;
  std::string format = "auto";
  std::string out;
  auto add_alpha = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "learning rate, >= 0")->check(CLI::NonNegativeNumber);
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--input-format", format, "instance format")
        ->check(CLI::IsMember({"auto", "fjs", "json", "jobs"}));
  };

  // solve
  std::string instance_path;
  std::string heuristic = "best";
  auto* solve = app.add_subcommand("solve", "run a constructive heuristic");
  solve->add_option("instance", instance_path)->required();
  add_alpha(solve);
  add_format(solve);
  solve->add_option("--heuristic", heuristic)->check(CLI::IsMember({"est", "ect", "best"}));
  solve->add_option("--out", out, "solution JSON path");

  // validate
  std::string solution_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a solution and compute its makespan");
  validate_cmd->add_option("instance", instance_path)->required();
  validate_cmd->add_option("solution", solution_path)->required();
  add_alpha(validate_cmd);
  add_format(validate_cmd);
  validate_cmd->add_option("--out", out, "report JSON path");

  // measure
  auto* measure = app.add_subcommand("measure", "instance statistics, flexibility and model sizes");
  measure->add_option("instance", instance_path)->required();
  add_format(measure);
  measure->add_option("--out", out);

  // export
  std::string model_format = "lp";
  std::string manifest_path;
  std::string warm_path;
  std::string mst_path;
  std::string cp_start_path;
  auto* export_cmd = app.add_subcommand("export", "write the MILP or CP model");
  export_cmd->add_option("instance", instance_path)->required();
  add_alpha(export_cmd);
  add_format(export_cmd);
  export_cmd->add_option("--format", model_format)->check(CLI::IsMember({"lp", "cp", "opl"}));
  export_cmd->add_option("--out", out, "model path");
  export_cmd->add_option("--manifest", manifest_path, "variable/size manifest JSON path");
  export_cmd->add_option("--warm-start", warm_path, "solution JSON to export as a starting point");
  export_cmd->add_option("--mst", mst_path, "MILP start (MST XML) output path");
  export_cmd->add_option("--cp-start", cp_start_path, "CP starting point output path");

  // oracle
  bool force = false;
  std::uint64_t max_combinations = 0;
  double time_limit = 600.0;
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for tiny instances");
  oracle->add_option("instance", instance_path)->required();
  add_alpha(oracle);
  add_format(oracle);
  oracle->add_flag("--force", force, "ignore the size guard");
  oracle->add_option("--max-combinations", max_combinations, "stop after this many complete schedules (0: no limit)");
  oracle->add_option("--time-limit", time_limit, "seconds")->check(CLI::PositiveNumber);
  oracle->add_option("--out", out);

  // gantt
  bool original = false;
  auto* gantt = app.add_subcommand("gantt", "Gantt table of a solution");
  gantt->add_option("solution", solution_path)->required();
  gantt->add_option("instance", instance_path)->required();
  add_alpha(gantt);
  add_format(gantt);
  gantt->add_flag("--original-units", original, "divide times by 100");
  gantt->add_option("--out", out);

  // bench
  std::string dir;
  std::vector<double> alphas{0.1, 0.2, 0.3};
  bool timings = false;
  auto* bench = app.add_subcommand("bench", "EST vs ECT over a directory of instances");
  bench->add_option("dir", dir)->required();
  bench->add_option("--alphas", alphas)->delimiter(',')->check(CLI::NonNegativeNumber);
  add_format(bench);
  bench->add_flag("--timings", timings, "add runtime columns");
  bench->add_option("--out", out);

  // gen
  RandomInstanceParams gp;
  std::string shape = "dag";
  std::string gen_format = "fjs";
  auto* gen = app.add_subcommand("gen", "random instance");
  gen->add_option("--seed", gp.seed);
  gen->add_option("--machines", gp.machine_count)->check(CLI::PositiveNumber);
  gen->add_option("--ops", gp.op_count)->check(CLI::PositiveNumber);
  gen->add_option("--jobs", gp.job_count)->check(CLI::PositiveNumber);
  gen->add_option("--shape", shape)->check(CLI::IsMember({"chain", "Y", "y", "dag", "arbitrary"}));
  gen->add_option("--density", gp.density)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--eligibility", gp.eligibility_probability)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--min-time", gp.min_time)->check(CLI::PositiveNumber);
  gen->add_option("--max-time", gp.max_time)->check(CLI::PositiveNumber);
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"fjs", "json"}));
  gen->add_option("--out", out);

  // convert
  std::string to = "fjs";
  auto* convert = app.add_subcommand("convert", "rewrite an instance in another format");
  convert->add_option("instance", instance_path)->required();
  add_format(convert);
  convert->add_option("--to", to)->check(CLI::IsMember({"fjs", "json"}));
  convert->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const LearningRate lr(alpha);

    if (*solve) {
      const Instance inst = load_instance(instance_path, format);
      const auto t0 = std::chrono::steady_clock::now();
      ScheduleResult res;
      if (heuristic == "est") {
        res = est_schedule(inst, lr);
      } else if (heuristic == "ect") {
        res = ect_schedule(inst, lr);
      } else {
        res = best_constructive(inst, lr).result;
      }
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const ValidationReport rep = validate(inst, lr, res.solution);
      if (!rep.feasible || rep.makespan != res.makespan) {
        std::cerr << "internal error: heuristic schedule failed validation\n";
        return kInfeasible;
      }
      if (!out.empty()) write_text_file(out, solution_to_json(res.solution, res.makespan, lr));
      std::cout << "makespan=" << res.makespan << " original=" << original_units(res.makespan) << " time=" << seconds
                << "\n";
      if (out.empty()) std::cout << solution_to_json(res.solution, res.makespan, lr);
      return kOk;
    }

    if (*validate_cmd) {
      const Instance inst = load_instance(instance_path, format);
      const SolutionFile sf = solution_from_json(inst, read_text_file(solution_path));
      const ValidationReport rep = validate(inst, lr, sf.solution);
      emit(out, validation_report_to_json(rep));
      if (!rep.feasible) {
        for (const auto& v : rep.violations) std::cerr << to_string(v.kind) << ": " << v.detail << "\n";
        return kInfeasible;
      }
      return kOk;
    }

    if (*measure) {
      const Instance inst = load_instance(instance_path, format);
      const FlexibilityReport fr = flexibility(inst);
      const ModelSizes ms = count_model_sizes(inst);
      nlohmann::ordered_json j;
      j["operations"] = fr.op_count;
      j["machines"] = fr.machine_count;
      j["arcs"] = fr.arc_count;
      j["jobs"] = fr.job_count;
      j["sum_eligible"] = fr.sum_eligible;
      j["omega1"] = round2(fr.omega1);
      j["omega2"] = round2(fr.omega2);
      j["omega1_exact"] = fr.omega1;
      j["omega2_exact"] = fr.omega2;
      j["binary_variables"] = ms.binary;
      j["interval_variables"] = ms.interval;
      j["continuous_variables"] = ms.continuous;
      j["milp_constraints"] = ms.milp_constraints;
      j["cp_constraints"] = ms.cp_constraints;
      j["counts_are_formula_based"] = ms.counts_are_formula_based;
      emit(out, j.dump(2) + "\n");
      return kOk;
    }

    if (*export_cmd) {
      const Instance inst = load_instance(instance_path, format);
      if (model_format == "lp") {
        const MilpArtifact milp = emit_milp(inst, lr);
        emit(out, milp.lp_text);
        if (!manifest_path.empty()) write_text_file(manifest_path, milp_manifest_json(milp));
      } else {
        const CpArtifact cp = emit_cp(inst, lr, model_format == "opl" ? CpSyntax::Opl : CpSyntax::Native);
        emit(out, cp.model_text);
        if (!manifest_path.empty()) write_text_file(manifest_path, cp_manifest_json(cp));
      }
      if (!warm_path.empty()) {
        const SolutionFile sf = solution_from_json(inst, read_text_file(warm_path));
        const WarmStart ws = warm_start_export(sf.solution, inst, lr);
        if (!mst_path.empty()) write_text_file(mst_path, ws.mst_text);
        if (!cp_start_path.empty()) write_text_file(cp_start_path, ws.cp_text);
      } else if (!mst_path.empty() || !cp_start_path.empty()) {
        throw UsageError("--mst and --cp-start need --warm-start");
      }
      return kOk;
    }

    if (*oracle) {
      const Instance inst = load_instance(instance_path, format);
      OracleLimits limits;
      limits.force = force;
      if (max_combinations > 0) limits.max_combinations = max_combinations;
      limits.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000.0));
      const OracleResult res = brute_force_optimal(inst, lr, limits);
      emit(out, oracle_result_to_json(res, lr));
      if (res.status == OracleStatus::Refused) {
        std::cerr << "estimated " << res.estimated_combinations << " combinations exceed the guard of "
                  << limits.max_estimated_combinations << "; rerun with --force\n";
        return kUsage;
      }
      return kOk;
    }

    if (*gantt) {
      const Instance inst = load_instance(instance_path, format);
      const SolutionFile sf = solution_from_json(inst, read_text_file(solution_path));
      const ValidationReport rep = validate(inst, lr, sf.solution);
      if (!rep.feasible) {
        for (const auto& v : rep.violations) std::cerr << to_string(v.kind) << ": " << v.detail << "\n";
        return kInfeasible;
      }
      emit(out, gantt_csv(inst, sf.solution, lr, original));
      return kOk;
    }

    if (*bench) {
      std::vector<BenchRow> rows;
      for (const fs::path& file : instance_files(dir)) {
        std::optional<Instance> inst;
        try {
          inst.emplace(load_instance(file.string(), format));
        } catch (const Error& e) {
          std::cerr << file.filename().string() << ": " << e.what() << "\n";
          continue;
        }
        for (double a : alphas) rows.push_back(bench_instance(file.stem().string(), *inst, LearningRate(a)));
      }
      emit(out, bench_csv(rows, timings));
      return kOk;
    }

    if (*gen) {
      gp.shape = parse_dag_shape(shape);
      const Instance inst = generate_random_instance(gp);
      emit(out, gen_format == "json" ? instance_to_json(inst) : write_instance(inst));
      return kOk;
    }

    if (*convert) {
      const Instance inst = load_instance(instance_path, format);
      emit(out, to == "json" ? instance_to_json(inst) : write_instance(inst));
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const CycleError& e) {
    // A cycle in a solution is infeasibility; in an instance it is bad input.
    const bool in_solution = std::string_view(e.what()).starts_with("infeasible");
    std::cerr << (in_solution ? "infeasible: " : "error: ") << e.what() << "\n";
    return in_solution ? kInfeasible : kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}
