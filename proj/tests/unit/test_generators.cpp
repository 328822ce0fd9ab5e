#include <doctest.h>

#include "hyplns/errors.hpp"
#include "hyplns/generators.hpp"
#include "hyplns/ilp.hpp"
#include "oracles.hpp"

using namespace hyplns;

TEST_CASE("MIS generator: structure and tiny optima") {
  const IlpInstance tri = gen_mis(3, 3, 42u);
  tri.validate();
  CHECK(tri.direction == Direction::Maximize);
  CHECK(tri.num_vars == 3);
  CHECK(tri.num_cons() == 3);
  const auto best = oracles::enumerate_best(tri);
  REQUIRE(best.found);
  CHECK(best.objective == 1.0);

  const IlpInstance loose = gen_mis(7, 0, 1u);
  CHECK(loose.num_cons() == 0);
  const auto all_ones = oracles::enumerate_best(loose);
  CHECK(all_ones.objective == 7.0);

  CHECK_THROWS_AS(gen_mis(3, 4, 0u), ParameterError);
}

TEST_CASE("MVC generator: triangle optimum and feasibility of all-ones") {
  const IlpInstance tri = gen_mvc(3, 3, 42u);
  tri.validate();
  CHECK(tri.direction == Direction::Minimize);
  const auto best = oracles::enumerate_best(tri);
  REQUIRE(best.found);
  CHECK(best.objective == 2.0);

  const IlpInstance empty = gen_mvc(5, 0, 1u);
  CHECK(oracles::enumerate_best(empty).objective == 0.0);
}

TEST_CASE("SC generator: coverage patch guarantees the all-ones vector") {
  const IlpInstance one = gen_sc(1, 4, 9u);
  one.validate();
  CHECK(one.num_vars == 1);
  CHECK(one.num_cons() == 4);
  CHECK(oracles::enumerate_best(one).objective == 1.0);

  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const IlpInstance inst = gen_sc(8, 20, seed);
    inst.validate();
    CHECK(inst.num_cons() == 20);  // every item covered after the patch
    Assignment ones{std::vector<std::uint8_t>(inst.num_vars, 1), {}};
    CHECK(is_feasible(inst, ones));
    for (const auto& row : inst.constraints) CHECK(row.sense == Sense::Ge);
  }

  CHECK_THROWS_AS(gen_sc(2, 20, 0u), ParameterError);
  CHECK_THROWS_AS(gen_sc(4, 3, 0u), ParameterError);
}

TEST_CASE("CA generator: item exclusivity and disjoint-bid optimum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const IlpInstance inst = gen_ca(6, 12, seed);
    inst.validate();
    CHECK(inst.direction == Direction::Maximize);
    CHECK(inst.num_vars == 6);
    CHECK(inst.num_cons() == 12);
    Assignment zeros{std::vector<std::uint8_t>(6, 0), {}};
    CHECK(is_feasible(inst, zeros));
    for (const auto& row : inst.constraints) {
      CHECK(row.sense == Sense::Le);
      CHECK(row.rhs == 1.0);
    }
    // Two bids sharing an item can never both be selected.
    for (const auto& row : inst.constraints)
      if (row.cols.size() >= 2) {
        Assignment both{std::vector<std::uint8_t>(6, 0), {}};
        both.values[row.cols[0]] = 1;
        both.values[row.cols[1]] = 1;
        CHECK(!check_feasibility(inst, both).empty());
      }
  }

  // 3 bids over 15 items: when the sampled bids are disjoint, everything
  // can be accepted and the optimum is the total price.
  bool found_disjoint = false;
  for (std::uint64_t seed = 0; seed < 200 && !found_disjoint; ++seed) {
    const IlpInstance inst = gen_ca(3, 15, seed);
    Assignment ones{std::vector<std::uint8_t>(3, 1), {}};
    if (is_feasible(inst, ones)) {
      found_disjoint = true;
      double total = inst.objective[0] + inst.objective[1] + inst.objective[2];
      CHECK(oracles::enumerate_best(inst).objective == total);
    }
  }
  CHECK(found_disjoint);

  CHECK_THROWS_AS(gen_ca(3, 4, 0u), ParameterError);
}

TEST_CASE("CA prices stay within the additive pricing range") {
  const IlpInstance inst = gen_ca(40, 30, 3u);
  for (double p : inst.objective) {
    CHECK(p >= 5.0);          // five items worth at least 1 each
    CHECK(p <= 5 * 100 + 10.0);
    CHECK(p == std::floor(p));  // integer prices
  }
}

TEST_CASE("generators are deterministic in the spec") {
  const GenSpec spec{Family::SC, 12, 24, 99u};
  const IlpInstance a = generate(spec);
  const IlpInstance b = generate(spec);
  CHECK(a.num_vars == b.num_vars);
  CHECK(a.objective == b.objective);
  REQUIRE(a.num_cons() == b.num_cons());
  for (std::int32_t r = 0; r < a.num_cons(); ++r) {
    CHECK(a.constraints[r].cols == b.constraints[r].cols);
    CHECK(a.constraints[r].coefs == b.constraints[r].coefs);
    CHECK(a.constraints[r].rhs == b.constraints[r].rhs);
  }
  const IlpInstance c = generate({Family::SC, 12, 24, 100u});
  bool identical = c.num_cons() == a.num_cons();
  if (identical)
    for (std::int32_t r = 0; r < a.num_cons() && identical; ++r)
      identical = a.constraints[r].cols == c.constraints[r].cols;
  CHECK(!identical);
}

TEST_CASE("paper-scale shapes (small rows)") {
  // Sizes only; structural checks are covered above at desk scale.
  const IlpInstance mis = gen_mis(10000, 30000, 1u);
  CHECK(mis.num_vars == 10000);
  CHECK(mis.num_cons() == 30000);
  const IlpInstance sc = gen_sc(20000, 20000, 1u);
  CHECK(sc.num_vars == 20000);
  CHECK(sc.num_cons() == 20000);
  const IlpInstance ca = gen_ca(10000, 10000, 1u);
  CHECK(ca.num_vars == 10000);
  CHECK(ca.num_cons() == 10000);
}
