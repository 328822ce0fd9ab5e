#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "hyplns/ilp.hpp"
#include "hyplns/solve_types.hpp"

namespace hyplns {

// Called for every strictly improving incumbent as it is found.
using IncumbentCallback = std::function<void(const IncumbentRecord&)>;

struct SolverOptions {
  // Simplex iteration cap per node; on cap the node falls back to the
  // objective-only bound.
  std::int64_t lp_iteration_cap = 20000;
  // Approximate flop allowance per node LP. The effective iteration cap is
  // work_budget / (2 * rows^2), so oversized relaxations near the top of the
  // tree are cut short while the small reduced ones solve to optimality.
  // Relaxations whose plausible iteration need exceeds the allowance are
  // skipped outright.
  double lp_node_work_budget = 5e7;
};

// Depth-first branch and bound over the 0/1 tree. Each node is bounded by
// the LP relaxation of its remaining subproblem (bounded-iteration primal
// simplex); branching picks the most fractional relaxation variable and
// descends toward the relaxation value first. Implied fixings are propagated
// before bounding.
SolveResult solve(const IlpInstance& instance, const SolveBudget& budget,
                  const std::optional<Assignment>& warm_start = std::nullopt,
                  const IncumbentCallback& on_incumbent = nullptr,
                  const SolverOptions& options = {});

// Sub-ILP solve: variables in `fixed` are pinned to the given values (taken
// from the incumbent), the rest are re-optimized. The incumbent is installed
// as the starting incumbent, so the result is never worse.
SolveResult solve_sub(const IlpInstance& instance, const std::map<std::int32_t, std::uint8_t>& fixed,
                      const SolveBudget& budget, const Assignment& incumbent,
                      const IncumbentCallback& on_incumbent = nullptr,
                      const SolverOptions& options = {});

}  // namespace hyplns
