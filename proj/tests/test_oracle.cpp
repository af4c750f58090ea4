#include "doctest.h"
#include "fjsched/heuristics.hpp"
#include "fjsched/oracle.hpp"
#include "fjsched/validator.hpp"
#include "support.hpp"

using namespace fjsched;

TEST_CASE("trivial optima") {
  const Instance one(1, {{1, {{1, 7}}}}, {});
  CHECK(brute_force_optimal(one, LearningRate(0.4)).optimal_makespan == 700);

  const Instance two(1, {{1, {{1, 10}}}, {2, {{1, 10}}}}, {});
  const OracleResult r = brute_force_optimal(two, LearningRate(0.3));
  CHECK(r.status == OracleStatus::Complete);
  CHECK(r.optimal_makespan == 1000 + psi(LearningRate(0.3), 10, 2));
}

TEST_CASE("forced chain: closed form") {
  // Total order, one machine each: the makespan is fixed.
  std::vector<OperationSpec> ops;
  ArcList arcs;
  for (int i = 1; i <= 5; ++i) {
    ops.push_back({i, {{1 + i % 2, 3 * i}}});
    if (i > 1) arcs.push_back({i - 1, i});
  }
  const Instance chain(2, ops, arcs);
  const LearningRate a(0.3);
  Time expected = 0;
  int pos[3] = {0, 0, 0};
  for (int i = 1; i <= 5; ++i) expected += psi(a, 3 * i, ++pos[1 + i % 2]);
  CHECK(brute_force_optimal(chain, a).optimal_makespan == expected);
}

TEST_CASE("oracle equals plain enumeration on tiny instances") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Instance inst = fjtest::random_tiny(seed, 5, 3);
    const LearningRate a(fjsched::kAlphaPresets[seed % 5]);
    const OracleResult r = brute_force_optimal(inst, a);
    REQUIRE(r.status == OracleStatus::Complete);
    CHECK(r.optimal_makespan == fjtest::naive_optimum(inst, a));
    REQUIRE(r.witness.has_value());
    const auto rep = validate(inst, a, *r.witness);
    CHECK(rep.feasible);
    CHECK(rep.makespan == r.optimal_makespan);

    OracleLimits unseeded;
    unseeded.seed_with_heuristics = false;
    const OracleResult u = brute_force_optimal(inst, a, unseeded);
    CHECK(u.optimal_makespan == r.optimal_makespan);
  }
}

TEST_CASE("oracle lower-bounds both heuristics and is deterministic") {
  for (std::uint64_t seed = 500; seed < 560; ++seed) {
    const Instance inst = fjtest::random_tiny(seed, 6, 3);
    const LearningRate a(0.1);
    const OracleResult r = brute_force_optimal(inst, a);
    CHECK(r.optimal_makespan <= est_schedule(inst, a).makespan);
    CHECK(r.optimal_makespan <= ect_schedule(inst, a).makespan);
    const OracleResult again = brute_force_optimal(inst, a);
    CHECK(again.witness == r.witness);
    CHECK(oracle_result_to_json(again, a) == oracle_result_to_json(r, a));
  }
}

TEST_CASE("combination estimate and guard") {
  const Instance inst = fjtest::example_instance();
  // Direct sum over all 5184 assignments of prod load_k!.
  double direct = 0.0;
  std::vector<std::size_t> choice(13, 0);
  while (true) {
    int load[4] = {0, 0, 0, 0};
    for (int i = 1; i <= 12; ++i) ++load[inst.op(i).eligible[choice[i]].first];
    double f = 1.0;
    for (int k = 1; k <= 3; ++k)
      for (int j = 2; j <= load[k]; ++j) f *= j;
    direct += f;
    int i = 1;
    while (i <= 12 && ++choice[i] == inst.op(i).eligible.size()) choice[i++] = 0;
    if (i > 12) break;
  }
  CHECK(estimate_combinations(inst) == direct);
  CHECK(estimate_combinations(inst, 1000.0) == 1000.0);

  const OracleResult refused = brute_force_optimal(inst, LearningRate(0.5));
  CHECK(refused.status == OracleStatus::Refused);
  CHECK_FALSE(refused.witness.has_value());
}

TEST_CASE("limits report the incumbent") {
  const Instance inst = fjtest::example_instance();
  OracleLimits limits;
  limits.force = true;
  limits.time_budget = std::chrono::milliseconds(0);
  const OracleResult r = brute_force_optimal(inst, LearningRate(0.5), limits);
  CHECK(r.status == OracleStatus::LimitExceeded);
  REQUIRE(r.witness.has_value());
  CHECK(r.optimal_makespan == best_constructive(inst, LearningRate(0.5)).result.makespan);
}

TEST_CASE("the example instance: optima 8000 and 5016") {
  const Instance inst = fjtest::example_instance();
  OracleLimits limits;
  limits.force = true;
  const OracleResult r0 = brute_force_optimal(inst, LearningRate(0.0), limits);
  CHECK(r0.status == OracleStatus::Complete);
  CHECK(r0.optimal_makespan == 8000);
  const OracleResult r5 = brute_force_optimal(inst, LearningRate(0.5), limits);
  CHECK(r5.status == OracleStatus::Complete);
  CHECK(r5.optimal_makespan == 5016);
  CHECK(r0.assignments == 5184);
}

TEST_CASE("oracle equals plain enumeration on dense six-operation instances") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    RandomInstanceParams p;
    p.seed = seed;
    p.op_count = 6;
    p.machine_count = 3;
    p.job_count = 1 + static_cast<int>(seed % 3);
    p.eligibility_probability = 0.9;
    p.density = 0.2;
    p.max_time = 40;
    const Instance inst = generate_random_instance(p);
    const LearningRate a(fjsched::kAlphaPresets[seed % 5]);
    CHECK(brute_force_optimal(inst, a).optimal_makespan == fjtest::naive_optimum(inst, a));
  }
}
