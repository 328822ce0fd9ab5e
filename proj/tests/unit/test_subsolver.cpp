#include <doctest.h>

#include <cmath>

#include "hyplns/errors.hpp"
#include "hyplns/generators.hpp"
#include "hyplns/rng.hpp"
#include "hyplns/subsolver.hpp"
#include "oracles.hpp"

using namespace hyplns;

namespace {

IlpInstance random_family_instance(Rng& rng, int max_vars = 14) {
  const int family = static_cast<int>(rng.below(4));
  switch (family) {
    case 0: {
      const int n = 4 + static_cast<int>(rng.below(max_vars - 3));
      const int max_e = n * (n - 1) / 2;
      return gen_mis(n, 1 + rng.below(std::min(max_e, 3 * n)), rng.next_u64());
    }
    case 1: {
      const int n = 4 + static_cast<int>(rng.below(max_vars - 3));
      const int max_e = n * (n - 1) / 2;
      return gen_mvc(n, 1 + rng.below(std::min(max_e, 3 * n)), rng.next_u64());
    }
    case 2: {
      const int sets = 4 + static_cast<int>(rng.below(max_vars - 3));
      const int items = 4 + static_cast<int>(rng.below(9));
      return gen_sc(sets, items, rng.next_u64());
    }
    default: {
      const int bids = 4 + static_cast<int>(rng.below(max_vars - 3));
      const int items = 5 + static_cast<int>(rng.below(8));
      return gen_ca(bids, items, rng.next_u64());
    }
  }
}

}  // namespace

TEST_CASE("triangle MIS solves to the enumeration optimum") {
  const IlpInstance inst = gen_mis(3, 3, 7u);
  const auto enumerated = oracles::enumerate_best(inst);
  REQUIRE(enumerated.found);
  CHECK(enumerated.objective == 1.0);

  const auto res = solve(inst, SolveBudget::nodes(1000));
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.best_objective == 1.0);
}

TEST_CASE("edge-free MIS: all ones optimal") {
  const IlpInstance inst = gen_mis(6, 0, 3u);
  const auto res = solve(inst, SolveBudget::nodes(100));
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.best_objective == 6.0);
  for (auto v : res.best->values) CHECK(v == 1);
}

TEST_CASE("node budget floor returns the warm start") {
  const IlpInstance inst = gen_mis(3, 3, 7u);  // fractional root relaxation
  Assignment warm{{0, 0, 0}, {}};
  const auto res = solve(inst, SolveBudget::nodes(1), warm);
  CHECK(res.status == SolveStatus::FeasibleBudgetExhausted);
  REQUIRE(res.best.has_value());
  CHECK(res.best->values == warm.values);
  CHECK(res.incumbents.empty());
  CHECK(res.best_objective == 0.0);
}

TEST_CASE("built-in backend matches exhaustive enumeration on small instances") {
  Rng rng(2024u);
  for (int trial = 0; trial < 40; ++trial) {
    const IlpInstance inst = random_family_instance(rng);
    const auto expected = oracles::enumerate_best(inst);
    const auto res = solve(inst, SolveBudget::nodes(200000));
    if (expected.found) {
      REQUIRE(res.status == SolveStatus::Optimal);
      CHECK(res.best_objective == expected.objective);
    } else {
      CHECK(res.status == SolveStatus::Infeasible);
    }
  }
}

TEST_CASE("incumbent stream strictly improves and ends at best") {
  Rng rng(909u);
  for (int trial = 0; trial < 20; ++trial) {
    const IlpInstance inst = random_family_instance(rng);
    const auto res = solve(inst, SolveBudget::nodes(200000));
    if (!res.best.has_value()) continue;
    REQUIRE(!res.incumbents.empty());
    for (std::size_t k = 1; k < res.incumbents.size(); ++k)
      CHECK(is_better(res.incumbents[k].objective, res.incumbents[k - 1].objective,
                      inst.direction));
    CHECK(res.incumbents.back().objective == res.best_objective);
    CHECK(is_feasible(inst, *res.best));
  }
}

TEST_CASE("sub-solve: fully fixed and empty fixings") {
  const IlpInstance inst = gen_mvc(5, 6, 19u);
  Assignment all_ones{std::vector<std::uint8_t>(5, 1), {}};
  REQUIRE(is_feasible(inst, all_ones));

  std::map<std::int32_t, std::uint8_t> all_fixed;
  for (std::int32_t i = 0; i < 5; ++i) all_fixed[i] = 1;
  const auto fixed_res = solve_sub(inst, all_fixed, SolveBudget::nodes(100), all_ones);
  CHECK(fixed_res.status == SolveStatus::Optimal);
  CHECK(fixed_res.best->values == all_ones.values);
  CHECK(fixed_res.incumbents.empty());

  const auto free_res = solve_sub(inst, {}, SolveBudget::nodes(100000), all_ones);
  const auto direct = solve(inst, SolveBudget::nodes(100000), all_ones);
  REQUIRE(free_res.status == SolveStatus::Optimal);
  REQUIRE(direct.status == SolveStatus::Optimal);
  CHECK(free_res.best_objective == direct.best_objective);
}

TEST_CASE("sub-solve matches enumeration restricted to the free variables") {
  Rng rng(311u);
  for (int trial = 0; trial < 25; ++trial) {
    const IlpInstance inst = random_family_instance(rng, 15);
    // Start from a feasible incumbent found by the solver itself.
    const auto seed_res = solve(inst, SolveBudget::nodes(200000));
    if (!seed_res.best.has_value()) continue;
    const Assignment incumbent = *seed_res.best;

    std::map<std::int32_t, std::uint8_t> fixed;
    for (std::int32_t i = 0; i < inst.num_vars; ++i)
      if (rng.below(2) == 0) fixed[i] = incumbent.values[i];

    const auto res = solve_sub(inst, fixed, SolveBudget::nodes(200000), incumbent);
    const auto expected = oracles::enumerate_best(inst, fixed);
    REQUIRE(expected.found);  // the incumbent restricted is always feasible
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(res.best_objective == expected.objective);
    for (const auto& [var, val] : fixed) CHECK(res.best->values[var] == val);
  }
}

TEST_CASE("monotone repair: sub-solve never degrades the incumbent") {
  Rng rng(555u);
  for (int trial = 0; trial < 30; ++trial) {
    const IlpInstance inst = random_family_instance(rng, 16);
    const auto seed_res = solve(inst, SolveBudget::nodes(50));
    if (!seed_res.best.has_value()) continue;
    const Assignment incumbent = *seed_res.best;
    const double inc_obj = seed_res.best_objective;

    std::map<std::int32_t, std::uint8_t> fixed;
    for (std::int32_t i = 0; i < inst.num_vars; ++i)
      if (rng.below(3) != 0) fixed[i] = incumbent.values[i];
    const auto res = solve_sub(inst, fixed, SolveBudget::nodes(30), incumbent);
    REQUIRE(res.best.has_value());
    const bool no_worse = inst.direction == Direction::Minimize
                              ? res.best_objective <= inc_obj
                              : res.best_objective >= inc_obj;
    CHECK(no_worse);
    CHECK(is_feasible(inst, *res.best));
  }
}

TEST_CASE("error paths: bad fixed map, infeasible warm start, empty budget") {
  const IlpInstance inst = gen_mis(4, 3, 5u);
  Assignment zeros{std::vector<std::uint8_t>(4, 0), {}};
  CHECK_THROWS_AS(solve_sub(inst, {{9, 1}}, SolveBudget::nodes(10), zeros), DimensionError);
  CHECK_THROWS_AS(solve(inst, SolveBudget{}), ParameterError);

  IlpInstance mvc = gen_mvc(4, 4, 5u);
  Assignment infeasible{std::vector<std::uint8_t>(4, 0), {}};
  CHECK_THROWS_AS(solve(mvc, SolveBudget::nodes(10), infeasible), PreconditionError);
}

TEST_CASE("LP relaxation bound dominates the integer optimum") {
  Rng rng(404u);
  for (int trial = 0; trial < 15; ++trial) {
    const IlpInstance inst = random_family_instance(rng, 12);
    const auto expected = oracles::enumerate_best(inst);
    if (!expected.found) continue;
    const auto res = solve(inst, SolveBudget::nodes(200000));
    REQUIRE(res.status == SolveStatus::Optimal);
    // With exact bounding the B&B optimum equals enumeration; the LP bound
    // dominating the integer optimum is what makes that equality possible.
    CHECK(res.best_objective == expected.objective);
  }
}
