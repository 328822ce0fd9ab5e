#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyplns/ilp.hpp"

namespace hyplns {

// Budget for one solve call. At least one limit must be present; node counts
// give deterministic tests, wall-clock mirrors the paper-style runs.
struct SolveBudget {
  std::optional<double> wall_time_s;
  std::optional<std::int64_t> node_limit;

  void validate() const;

  static SolveBudget nodes(std::int64_t n) { return SolveBudget{std::nullopt, n}; }
  static SolveBudget seconds(double s) { return SolveBudget{s, std::nullopt}; }
};

enum class SolveStatus {
  Optimal,
  FeasibleBudgetExhausted,
  Infeasible,
  NoSolutionFound,
};

std::string to_string(SolveStatus s);

// One improving solution found during a search.
struct IncumbentRecord {
  Assignment assignment;
  double objective = 0.0;  // in the instance's own direction
  double elapsed_s = 0.0;
  std::int64_t nodes = 0;  // nodes processed when it was found
};

// Result of a (sub-)solve. `incumbents` holds every strictly improving
// solution discovered by this call, in discovery order; an installed warm
// start is not re-emitted. `best` is the last incumbent if any exist, else
// the warm start when one was supplied.
struct SolveResult {
  SolveStatus status = SolveStatus::NoSolutionFound;
  std::optional<Assignment> best;
  double best_objective = 0.0;  // meaningful iff best has a value
  std::vector<IncumbentRecord> incumbents;
  std::int64_t nodes_used = 0;
  double elapsed_s = 0.0;
  bool warning = false;  // set by the external adapter fallback path
};

}  // namespace hyplns
