#pragma once

#include <cstdint>
#include <vector>

namespace hyplns {

// Minimization LP over box-bounded variables:
//   min c'x  s.t.  lo_r <=/>=/= a_r'x  (row sense vs rhs),  lb <= x <= ub.
// Rows are sparse; senses use the same convention as IlpInstance.
struct LpRow {
  std::vector<std::int32_t> cols;
  std::vector<double> coefs;
  int sense;  // 0 '>=', 1 '<=', 2 '='  (matches Sense enum order)
  double rhs;
};

struct LpProblem {
  std::int32_t num_vars = 0;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> x;
  std::int64_t iterations = 0;
};

// Bounded-variable primal simplex (revised form, dense basis inverse,
// two phases with artificials). Dantzig pricing switches to Bland's rule
// while pivots are degenerate to avoid cycling. `start_hint` optionally
// supplies an initial value per variable; values are clamped to the bounds
// and often allow phase one to be skipped.
LpResult solve_lp(const LpProblem& problem, std::int64_t max_iterations,
                  const std::vector<double>* start_hint = nullptr);

}  // namespace hyplns
