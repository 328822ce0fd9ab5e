#include <doctest.h>

#include <limits>

#include "hyplns/errors.hpp"
#include "hyplns/ilp.hpp"
#include "hyplns/rng.hpp"
#include "oracles.hpp"

using namespace hyplns;

namespace {

IlpInstance two_var_le() {
  IlpInstance inst;
  inst.num_vars = 2;
  inst.direction = Direction::Maximize;
  inst.objective = {3.0, 2.0};
  inst.constraints.push_back({{0, 1}, {1.0, 1.0}, Sense::Le, 1.0});
  return inst;
}

}  // namespace

TEST_CASE("objective evaluation basics") {
  IlpInstance inst = two_var_le();
  CHECK(evaluate_objective(inst, {{1, 0}, {}}) == 3.0);
  CHECK(evaluate_objective(inst, {{0, 1}, {}}) == 2.0);

  inst.objective = {0.0, 0.0};
  CHECK(evaluate_objective(inst, {{1, 1}, {}}) == 0.0);

  CHECK_THROWS_AS(evaluate_objective(inst, Assignment{{1}, {}}), DimensionError);
}

TEST_CASE("objective matches independent dot-product oracle") {
  Rng rng(20240u);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(30));
    IlpInstance inst;
    inst.num_vars = n;
    inst.objective.resize(n);
    for (double& c : inst.objective) c = std::floor(rng.uniform(-50.0, 50.0));
    Assignment x;
    x.values.resize(n);
    for (auto& v : x.values) v = static_cast<std::uint8_t>(rng.below(2));
    CHECK(evaluate_objective(inst, x) ==
          doctest::Approx(oracles::dot_objective(inst.objective, x.values)).epsilon(1e-12));
  }
}

TEST_CASE("feasibility report and slack signs") {
  IlpInstance inst = two_var_le();
  auto report = check_feasibility(inst, {{1, 1}, {}});
  REQUIRE(report.size() == 1);
  CHECK(report[0].row == 0);
  CHECK(report[0].slack == -1.0);

  IlpInstance ge;
  ge.num_vars = 2;
  ge.objective = {1.0, 1.0};
  ge.constraints.push_back({{0, 1}, {1.0, 1.0}, Sense::Ge, 1.0});
  CHECK(check_feasibility(ge, {{0, 1}, {}}).empty());

  CHECK_THROWS_AS(check_feasibility(ge, Assignment{{0}, {}}), DimensionError);
}

TEST_CASE("feasibility agrees with duplicate-evaluation oracle") {
  Rng rng(77u);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    IlpInstance inst;
    inst.num_vars = n;
    inst.objective.assign(n, 1.0);
    const int m = 1 + static_cast<int>(rng.below(6));
    for (int r = 0; r < m; ++r) {
      Constraint row;
      for (int i = 0; i < n; ++i)
        if (rng.below(2)) {
          row.cols.push_back(i);
          row.coefs.push_back(std::floor(rng.uniform(-3.0, 4.0)));
        }
      if (row.cols.empty()) { row.cols.push_back(0); row.coefs.push_back(1.0); }
      row.sense = static_cast<Sense>(rng.below(3));
      row.rhs = std::floor(rng.uniform(-2.0, 3.0));
      inst.constraints.push_back(std::move(row));
    }
    Assignment x;
    x.values.resize(n);
    for (auto& v : x.values) v = static_cast<std::uint8_t>(rng.below(2));
    CHECK(check_feasibility(inst, x).empty() == oracles::feasible(inst, x.values));
  }
}

TEST_CASE("instance validation catches structural defects") {
  IlpInstance inst = two_var_le();
  CHECK_NOTHROW(inst.validate());

  IlpInstance dup = two_var_le();
  dup.constraints[0].cols = {0, 0};
  CHECK_THROWS_AS(dup.validate(), ModelError);

  IlpInstance out_of_range = two_var_le();
  out_of_range.constraints[0].cols = {0, 2};
  CHECK_THROWS_AS(out_of_range.validate(), DimensionError);

  IlpInstance empty_row = two_var_le();
  empty_row.constraints[0].cols.clear();
  empty_row.constraints[0].coefs.clear();
  CHECK_THROWS_AS(empty_row.validate(), ModelError);

  IlpInstance nonfinite = two_var_le();
  nonfinite.objective[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(nonfinite.validate(), ModelError);
}
