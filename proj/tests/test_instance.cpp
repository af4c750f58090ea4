#include <string>

#include "doctest.h"
#include "fjsched/dag.hpp"
#include "support.hpp"

using namespace fjsched;

TEST_CASE("the example file parses to the hand-built instance") {
  const Instance inst = read_instance_file(FJSCHED_DATA_DIR "/example.fjs");
  CHECK(inst == fjtest::example_instance());
  CHECK(inst.op_count() == 12);
  CHECK(inst.machine_count() == 3);
  CHECK(inst.precedence().size() == 11);
  CHECK(inst.eligible_pair_count() == 26);
  CHECK(inst.eligible_ops(2) == std::vector<OpId>{1, 2, 4, 5, 7, 8, 9, 10, 11});
  CHECK(*inst.processing_time(4, 2) == 30);
  CHECK_FALSE(inst.processing_time(4, 1).has_value());
}

TEST_CASE("text and JSON round trips") {
  const Instance inst = fjtest::example_instance();
  CHECK(parse_instance(write_instance(inst)) == inst);
  CHECK(instance_from_json(instance_to_json(inst)) == inst);
  CHECK(write_instance(parse_instance(write_instance(inst))) == write_instance(inst));
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance r = fjtest::random_tiny(seed, 10, 4);
    CHECK(parse_instance(write_instance(r)) == r);
    CHECK(instance_from_json(instance_to_json(r)) == r);
  }
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("2 1 0\n1 1 1 5\n2 1 1 x\n") == 3);
  CHECK(line_of("# header\n2 1 0\n1 1 1 5\n") > 0);
  CHECK(line_of("1 1 0\n1 1 2 5\n") == 2);   // machine out of range
  CHECK(line_of("1 1 0\n1 1 1 0\n") == 2);   // zero time
  CHECK(line_of("2 1 1\n1 1 1 5\n2 1 1 5\n1 3\n") == 4);
  CHECK_THROWS_AS(parse_instance("2 1 2\n1 1 1 5\n2 1 1 5\n1 2\n1 2\n"), ParseError);  // duplicate arc
  CHECK_THROWS_AS(parse_instance("1 1 1\n1 1 1 5\n1 1\n"), ParseError);                 // self loop
}

TEST_CASE("cyclic precedence is rejected with the cycle") {
  try {
    parse_instance("3 1 3\n1 1 1 5\n2 1 1 5\n3 1 1 5\n1 2\n2 3\n3 1\n");
    FAIL("expected CycleError");
  } catch (const CycleError& e) {
    CHECK(e.cycle().size() == 3);
  }
}

TEST_CASE("jobs are weak components") {
  const auto js = jobs(fjtest::example_instance());
  CHECK(js == std::vector<std::vector<OpId>>{{1, 2, 3, 4, 5, 6}, {7, 8, 9, 10, 11, 12}});
}

TEST_CASE("flexibility of the example") {
  const FlexibilityReport f = flexibility(fjtest::example_instance());
  CHECK(f.sum_eligible == 26);
  CHECK(f.omega2 == doctest::Approx(14.0 / 24.0).epsilon(1e-12));
  REQUIRE(f.per_job_omega1.size() == 2);
  CHECK(f.per_job_omega1[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(round2(f.per_job_omega1[0]) == 0.2);
  CHECK(round2(f.omega2) == 0.58);
}

namespace {

Instance single_job(int n, const ArcList& arcs, int machines, int eligible_each) {
  std::vector<OperationSpec> ops;
  for (int i = 1; i <= n; ++i) {
    OperationSpec op{i, {}};
    for (int k = 1; k <= eligible_each; ++k) op.eligible.emplace_back(k, 1);
    ops.push_back(op);
  }
  return Instance(machines, std::move(ops), arcs);
}

}  // namespace

TEST_CASE("flexibility extremes") {
  // A chain has no sequencing freedom; a star with a common source and sink is maximal.
  CHECK(flexibility(single_job(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}, 3, 1)).omega1 == 0.0);
  CHECK(flexibility(single_job(5, {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 5}, {4, 5}}, 3, 1)).omega1 <= 1.0);
  CHECK(flexibility(single_job(4, {{1, 2}, {1, 3}, {1, 4}}, 3, 1)).omega1 == doctest::Approx(1.0));
  CHECK(flexibility(single_job(1, {}, 2, 2)).omega1 == 1.0);
  CHECK(flexibility(single_job(2, {{1, 2}}, 2, 2)).omega1 == 0.0);
  // Routing: one eligible machine each vs all machines.
  CHECK(flexibility(single_job(4, {{1, 2}, {1, 3}, {1, 4}}, 3, 1)).omega2 == 0.0);
  CHECK(flexibility(single_job(4, {{1, 2}, {1, 3}, {1, 4}}, 3, 3)).omega2 == 1.0);
  CHECK(flexibility(single_job(3, {{1, 2}, {2, 3}}, 1, 1)).omega2 == 0.0);
}

TEST_CASE("flexibility ignores transitive arcs") {
  const auto a = flexibility(single_job(4, {{1, 2}, {2, 3}, {3, 4}}, 2, 1));
  const auto b = flexibility(single_job(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}, 2, 1));
  CHECK(a.omega1 == b.omega1);
}

TEST_CASE("round2 rounds halves up") {
  CHECK(round2(0.125) == 0.13);
  CHECK(round2(0.535714) == 0.54);
  CHECK(round2(0.0) == 0.0);
  CHECK(round2(1.0) == 1.0);
}

TEST_CASE("generator output is valid, deterministic and shaped") {
  for (auto shape : {DagShape::Chain, DagShape::Y, DagShape::Arbitrary}) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      RandomInstanceParams p;
      p.seed = seed;
      p.shape = shape;
      p.op_count = 3 + static_cast<int>(seed % 9);
      p.job_count = 1 + static_cast<int>(seed % 3);
      p.machine_count = 1 + static_cast<int>(seed % 4);
      const Instance a = generate_random_instance(p);
      const Instance b = generate_random_instance(p);
      CHECK(a == b);
      CHECK(a.op_count() == p.op_count);
      CHECK(jobs(a).size() == static_cast<std::size_t>(std::min(p.job_count, p.op_count)));
      CHECK(parse_instance(write_instance(a)) == a);
      for (const auto& op : a.operations()) CHECK_FALSE(op.eligible.empty());
      if (shape == DagShape::Chain) {
        const auto f = flexibility(a);
        const auto js = jobs(a);
        for (std::size_t j = 0; j < js.size(); ++j) CHECK(f.per_job_omega1[j] == (js[j].size() == 1 ? 1.0 : 0.0));
      }
      const ArcList red = transitive_reduction(a.precedence(), a.op_count());
      CHECK(red.size() == a.precedence().size());
    }
  }
  RandomInstanceParams bad;
  bad.op_count = 0;
  CHECK_THROWS_AS(generate_random_instance(bad), std::invalid_argument);
}

TEST_CASE("dag shape names") {
  CHECK(parse_dag_shape("chain") == DagShape::Chain);
  CHECK(parse_dag_shape("Y") == DagShape::Y);
  CHECK(parse_dag_shape("dag") == DagShape::Arbitrary);
  CHECK_THROWS_AS(parse_dag_shape("tree"), std::invalid_argument);
}
