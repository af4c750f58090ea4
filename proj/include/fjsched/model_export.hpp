#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fjsched/instance.hpp"
#include "fjsched/learning.hpp"

namespace fjsched {

// Variable names shared by the model emitters and the warm-start writer.
std::string x_var(OpId i, MachineId k, int r);   // x_i_k_r, binary
std::string s_var(OpId i);                       // s_i, start of i
std::string h_var(MachineId k, int r);           // h_k_r, start of position r on k
std::string pp_var(OpId i);                      // pp_i, actual processing time of i
inline constexpr const char* kMakespanVar = "Cmax";
std::string a_interval(OpId i, MachineId k, int r);  // optional interval a_i_k_r
std::string o_interval(OpId i);                      // mandatory interval o_i

enum class VarKind { Binary, Continuous };

struct VariableInfo {
  std::string name;
  VarKind kind;
  std::string meaning;
};

enum class Sense { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
  std::int64_t coef;
  int var;  // index into MilpArtifact::variables
};

struct LinearRow {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense;
  std::int64_t rhs;
};

/// Every MILP variable in manifest order: x (by op, machine, position), then
/// s, h (by machine, position), pp, and Cmax.
std::vector<VariableInfo> milp_variables(const Instance& inst);

struct MilpArtifact {
  std::string lp_text;
  std::vector<VariableInfo> variables;
  std::vector<LinearRow> rows;
  int makespan_var = -1;
  std::int64_t binary_count = 0;
  std::int64_t continuous_count = 0;
  std::int64_t constraint_count = 0;
  std::int64_t big_m = 0;
};

/// Position-based MILP in LP file format.
///
/// Rows: assign_i (one position overall), pos_k_r (one operation per
/// position), noskip_k_r (no gaps), ptime_i (defines pp_i), mseq_k_r (machine
/// order), mkspan_k (last position bounds Cmax), prec_i_j, disj_i_j_k_r,
/// linkA_i_k_r and linkB_i_k_r (h_k_r equals s_i when x_i_k_r = 1).
/// Big-M is 100 times the sum of all eligible standard times.
MilpArtifact emit_milp(const Instance& inst, LearningRate alpha);

struct RowViolation {
  std::string row;
  double lhs;
  std::int64_t rhs;
};

/// Substitutes `values` (by name; missing names count as 0) into every row and
/// returns the rows that do not hold within `tolerance`.
std::vector<RowViolation> check_milp_values(const MilpArtifact& milp,
                                            const std::map<std::string, double>& values,
                                            double tolerance = 1e-6);

std::string milp_manifest_json(const MilpArtifact& milp);

struct IntervalInfo {
  std::string name;
  bool optional = false;
  Time size = 0;  // 0 for the mandatory o_i (size follows the alternative)
  OpId op = 0;
  MachineId machine = 0;
  int position = 0;
};

enum class CpSyntax {
  /// One statement per line, one line per constraint instance.
  Native,
  /// Array-based OPL model for CP Optimizer.
  Opl,
};

struct CpArtifact {
  std::string model_text;
  std::vector<IntervalInfo> intervals;
  std::int64_t interval_count = 0;
  std::int64_t constraint_count = 0;
};

/// Interval model: mandatory o_i, optional a_i_k_r of fixed size
/// psi(p_ik, r), endBeforeStart per precedence, alternative per operation,
/// noOverlap per machine, endBeforeStart between consecutive positions, and
/// the no-empty-leading-position implication.
CpArtifact emit_cp(const Instance& inst, LearningRate alpha, CpSyntax syntax = CpSyntax::Native);

std::string cp_manifest_json(const CpArtifact& cp);

struct ModelSizes {
  std::int64_t binary = 0;
  std::int64_t interval = 0;
  std::int64_t continuous = 0;
  std::int64_t milp_constraints = 0;
  std::int64_t cp_constraints = 0;
  /// Continuous and constraint counts follow this repo's emitters and are not
  /// expected to match solver-side accounting.
  bool counts_are_formula_based = true;
};

/// Closed-form counts; agree with what emit_milp and emit_cp produce.
ModelSizes count_model_sizes(const Instance& inst);

}  // namespace fjsched
