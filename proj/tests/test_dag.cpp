#include <random>
#include <set>

#include "doctest.h"
#include "fjsched/dag.hpp"

using namespace fjsched;

namespace {

// Reachability by repeated relaxation; independent of the library.
std::set<Arc> closure_reference(int n, const ArcList& arcs) {
  std::vector<std::vector<bool>> r(n + 1, std::vector<bool>(n + 1, false));
  for (const Arc& a : arcs) r[a.from][a.to] = true;
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  std::set<Arc> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && r[i][j]) out.insert({i, j});
  return out;
}

ArcList random_dag(std::mt19937_64& rng, int n, double density) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(density);
  ArcList arcs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) arcs.push_back({perm[i], perm[j]});
  return arcs;
}

}  // namespace

TEST_CASE("topological order respects every arc and prefers small ids") {
  const ArcList arcs{{3, 1}, {2, 1}, {4, 2}};
  const auto order = topological_order(4, arcs);
  CHECK(order == std::vector<OpId>{3, 4, 2, 1});
}

TEST_CASE("cycles are detected and reported") {
  const ArcList arcs{{1, 2}, {2, 3}, {3, 1}, {3, 4}};
  const auto cycle = find_cycle(4, arcs);
  REQUIRE(cycle.has_value());
  CHECK(cycle->size() == 3);
  CHECK_THROWS_AS(topological_order(4, arcs), CycleError);
  CHECK_FALSE(find_cycle(4, {{1, 2}, {2, 3}}).has_value());
}

TEST_CASE("closure and reduction agree with a reference on random DAGs") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const ArcList arcs = random_dag(rng, n, 0.35);
    const auto ref = closure_reference(n, arcs);
    const ArcList closure = transitive_closure(arcs, n);
    CHECK(std::set<Arc>(closure.begin(), closure.end()) == ref);
    CHECK(std::is_sorted(closure.begin(), closure.end()));

    const ArcList reduction = transitive_reduction(arcs, n);
    CHECK(closure_reference(n, reduction) == ref);
    // Minimal: dropping any arc changes the closure.
    for (std::size_t drop = 0; drop < reduction.size(); ++drop) {
      ArcList fewer = reduction;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK(closure_reference(n, fewer) != ref);
    }
    // Idempotent.
    CHECK(transitive_reduction(reduction, n) == reduction);
  }
}

TEST_CASE("weak components") {
  const auto comps = weak_components(6, {{2, 1}, {4, 5}});
  CHECK(comps == std::vector<std::vector<OpId>>{{1, 2}, {3}, {4, 5}, {6}});
}
