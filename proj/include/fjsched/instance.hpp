#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fjsched/types.hpp"

namespace fjsched {

/// One operation and the machines that can run it.
/// `eligible` is sorted by machine id; times are standard (unscaled) units.
struct OperationSpec {
  OpId id = 0;
  std::vector<std::pair<MachineId, Time>> eligible;

  friend bool operator==(const OperationSpec&, const OperationSpec&) = default;
};

/// A flexible job shop instance with sequencing flexibility.
///
/// Immutable once built. The constructor validates every invariant: ids are
/// 1..op_count, machine ids are 1..machine_count, times are >= 1, each
/// operation has at least one eligible machine, and the precedence digraph
/// is a DAG without self loops or duplicate arcs.
class Instance {
 public:
  Instance(int machine_count, std::vector<OperationSpec> operations, ArcList precedence);

  int machine_count() const { return machine_count_; }
  int op_count() const { return static_cast<int>(operations_.size()); }
  const std::vector<OperationSpec>& operations() const { return operations_; }
  const OperationSpec& op(OpId i) const { return operations_[i - 1]; }
  /// Precedence arcs, in the order given.
  const ArcList& precedence() const { return precedence_; }

  std::optional<Time> processing_time(OpId i, MachineId k) const;
  bool eligible(OpId i, MachineId k) const { return processing_time(i, k).has_value(); }

  const std::vector<OpId>& predecessors(OpId i) const { return preds_[i]; }
  const std::vector<OpId>& successors(OpId i) const { return succs_[i]; }
  /// O_k: operations that machine k can process, ascending.
  const std::vector<OpId>& eligible_ops(MachineId k) const { return ops_on_machine_[k]; }

  /// Sum over operations of the eligible machine count.
  int eligible_pair_count() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.machine_count_ == b.machine_count_ && a.operations_ == b.operations_ &&
           a.precedence_ == b.precedence_;
  }

 private:
  int machine_count_;
  std::vector<OperationSpec> operations_;
  ArcList precedence_;
  std::vector<std::vector<OpId>> preds_;
  std::vector<std::vector<OpId>> succs_;
  std::vector<std::vector<OpId>> ops_on_machine_;
};

// Canonical text format:
//   <op_count> <machine_count> <arc_count>
//   <op_id> <e> <k_1> <p_1> ... <k_e> <p_e>     (op_count lines)
//   <i> <j>                                     (arc_count lines)
// '#' starts a comment, blank lines are ignored.
Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& inst);
Instance read_instance_file(const std::string& path);

std::string instance_to_json(const Instance& inst);
Instance instance_from_json(std::string_view text);

/// Jobs are the weakly connected components of the precedence digraph.
std::vector<std::vector<OpId>> jobs(const Instance& inst);

struct FlexibilityReport {
  double omega1 = 0.0;
  std::vector<double> per_job_omega1;
  double omega2 = 0.0;
  int job_count = 0;
  int op_count = 0;
  int machine_count = 0;
  int arc_count = 0;
  int sum_eligible = 0;
};

/// Sequencing (omega1) and routing (omega2) flexibility.
///
/// Per job: 1 - (a - (n-1)) / (n(n-1)/2 - (n-1)) where a counts closure arcs
/// inside the job. Jobs with a single operation count as 1, two-operation
/// jobs (necessarily a chain) as 0.
FlexibilityReport flexibility(const Instance& inst);

/// Round half up to two decimals, the display convention for omega columns.
double round2(double value);

enum class DagShape { Chain, Y, Arbitrary };

struct RandomInstanceParams {
  std::uint64_t seed = 1;
  int machine_count = 3;
  int op_count = 6;
  int job_count = 1;
  DagShape shape = DagShape::Arbitrary;
  /// Arc probability between ordered pairs inside a job (Arbitrary shape).
  double density = 0.3;
  double eligibility_probability = 0.5;
  Time min_time = 1;
  Time max_time = 20;
};

/// Random instance for tests and experiments. Not a model of any published
/// generator; output is deterministic for a fixed seed on a given platform.
Instance generate_random_instance(const RandomInstanceParams& params);

DagShape parse_dag_shape(std::string_view name);

}  // namespace fjsched
