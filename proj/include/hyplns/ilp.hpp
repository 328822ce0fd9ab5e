#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyplns {

enum class Direction { Minimize, Maximize };

enum class Sense { Ge, Le, Eq };

std::string to_string(Direction d);
std::string to_string(Sense s);

// One sparse constraint row: sum_k coefs[k] * x[cols[k]]  <sense>  rhs.
struct Constraint {
  std::vector<std::int32_t> cols;
  std::vector<double> coefs;
  Sense sense = Sense::Ge;
  double rhs = 0.0;
};

// Sparse binary ILP: optimize c'x subject to the constraint rows, x in {0,1}^n.
// Coefficients are stored as doubles but the bundled generators emit only
// small integers, so objective and activity sums are exact.
struct IlpInstance {
  std::int32_t num_vars = 0;
  Direction direction = Direction::Minimize;
  std::vector<double> objective;
  std::vector<Constraint> constraints;

  std::int32_t num_cons() const { return static_cast<std::int32_t>(constraints.size()); }
  std::int64_t num_nonzeros() const;

  // Enforces the structural invariants: index ranges, no duplicate columns in
  // a row, non-empty rows, finite data. Throws ModelError / DimensionError.
  void validate() const;
};

// 0/1 assignment of all variables, with an optionally cached objective value.
struct Assignment {
  std::vector<std::uint8_t> values;
  std::optional<double> objective_value;

  std::int32_t size() const { return static_cast<std::int32_t>(values.size()); }
};

// A violated row and its (negative) slack.
struct Violation {
  std::int32_t row;
  double slack;
};

// c'x, independent of the objective direction.
double evaluate_objective(const IlpInstance& instance, const Assignment& assignment);

// Row activity a_j'x.
double row_activity(const Constraint& row, const Assignment& assignment);

// Slack convention: >= rows give activity-rhs, <= rows give rhs-activity,
// = rows give -|activity-rhs|; a row is violated iff slack < 0.
double row_slack(const Constraint& row, const Assignment& assignment);

// Every violated row with its slack; empty iff the assignment is feasible.
// Comparisons are exact (integral data contract, see module docs).
std::vector<Violation> check_feasibility(const IlpInstance& instance,
                                         const Assignment& assignment);

bool is_feasible(const IlpInstance& instance, const Assignment& assignment);

// True when lhs is strictly better than rhs under the given direction.
inline bool is_better(double lhs, double rhs, Direction dir) {
  return dir == Direction::Minimize ? lhs < rhs : lhs > rhs;
}

// Worst representable objective for the direction (used as the initial bar).
double worst_objective(Direction dir);

}  // namespace hyplns
