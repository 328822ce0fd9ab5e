#include "hyplns/ilp.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "hyplns/errors.hpp"

namespace hyplns {

std::string to_string(Direction d) {
  return d == Direction::Minimize ? "minimize" : "maximize";
}

std::string to_string(Sense s) {
  switch (s) {
    case Sense::Ge: return ">=";
    case Sense::Le: return "<=";
    case Sense::Eq: return "=";
  }
  return "?";
}

std::int64_t IlpInstance::num_nonzeros() const {
  std::int64_t nnz = 0;
  for (const auto& row : constraints) nnz += static_cast<std::int64_t>(row.cols.size());
  return nnz;
}

void IlpInstance::validate() const {
  if (num_vars <= 0) throw ModelError("instance has no variables");
  if (static_cast<std::int32_t>(objective.size()) != num_vars)
    throw DimensionError("objective length does not match num_vars");
  for (double c : objective)
    if (!std::isfinite(c)) throw ModelError("non-finite objective coefficient");
  std::unordered_set<std::int32_t> seen;
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    const auto& row = constraints[j];
    if (row.cols.empty()) throw ModelError("constraint row " + std::to_string(j) + " is empty");
    if (row.cols.size() != row.coefs.size())
      throw DimensionError("constraint row " + std::to_string(j) + " cols/coefs length mismatch");
    if (!std::isfinite(row.rhs)) throw ModelError("non-finite rhs in row " + std::to_string(j));
    seen.clear();
    for (std::size_t k = 0; k < row.cols.size(); ++k) {
      const std::int32_t col = row.cols[k];
      if (col < 0 || col >= num_vars)
        throw DimensionError("row " + std::to_string(j) + " references column " +
                             std::to_string(col) + " outside [0," + std::to_string(num_vars) + ")");
      if (!seen.insert(col).second)
        throw ModelError("row " + std::to_string(j) + " has duplicate column " +
                         std::to_string(col));
      if (!std::isfinite(row.coefs[k]))
        throw ModelError("non-finite coefficient in row " + std::to_string(j));
    }
  }
}

double evaluate_objective(const IlpInstance& instance, const Assignment& assignment) {
  if (assignment.size() != instance.num_vars)
    throw DimensionError("assignment length does not match instance");
  double total = 0.0;
  for (std::int32_t i = 0; i < instance.num_vars; ++i)
    if (assignment.values[i]) total += instance.objective[i];
  return total;
}

double row_activity(const Constraint& row, const Assignment& assignment) {
  double act = 0.0;
  for (std::size_t k = 0; k < row.cols.size(); ++k)
    if (assignment.values[row.cols[k]]) act += row.coefs[k];
  return act;
}

double row_slack(const Constraint& row, const Assignment& assignment) {
  const double act = row_activity(row, assignment);
  switch (row.sense) {
    case Sense::Ge: return act - row.rhs;
    case Sense::Le: return row.rhs - act;
    case Sense::Eq: return -std::abs(act - row.rhs);
  }
  return 0.0;
}

std::vector<Violation> check_feasibility(const IlpInstance& instance,
                                         const Assignment& assignment) {
  if (assignment.size() != instance.num_vars)
    throw DimensionError("assignment length does not match instance");
  std::vector<Violation> report;
  for (std::int32_t j = 0; j < instance.num_cons(); ++j) {
    const double slack = row_slack(instance.constraints[j], assignment);
    if (slack < 0.0) report.push_back({j, slack});
  }
  return report;
}

bool is_feasible(const IlpInstance& instance, const Assignment& assignment) {
  if (assignment.size() != instance.num_vars)
    throw DimensionError("assignment length does not match instance");
  for (const auto& row : instance.constraints)
    if (row_slack(row, assignment) < 0.0) return false;
  return true;
}

double worst_objective(Direction dir) {
  return dir == Direction::Minimize ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
}

}  // namespace hyplns
