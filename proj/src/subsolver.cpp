#include "hyplns/subsolver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "hyplns/errors.hpp"
#include "hyplns/simplex.hpp"

namespace hyplns {

void SolveBudget::validate() const {
  if (!wall_time_s && !node_limit)
    throw ParameterError("solve budget needs a wall-time or node limit");
  if (wall_time_s && *wall_time_s <= 0.0) throw ParameterError("wall-time limit must be positive");
  if (node_limit && *node_limit <= 0) throw ParameterError("node limit must be positive");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleBudgetExhausted: return "feasible-budget-exhausted";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NoSolutionFound: return "no-solution-found";
  }
  return "?";
}

namespace {

constexpr double kEps = 1e-7;
constexpr double kBoundEps = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

struct RowState {
  double act_fixed = 0.0;  // contribution of fixed variables
  double min_free = 0.0;   // sum of negative free coefficients
  double max_free = 0.0;   // sum of positive free coefficients
  double max_abs = 0.0;
  std::int32_t free_count = 0;
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpInstance& inst, const SolveBudget& budget,
                 const IncumbentCallback& on_incumbent, const SolverOptions& options)
      : inst_(inst), budget_(budget), on_incumbent_(on_incumbent), options_(options) {
    budget_.validate();
    inst_.validate();
    const std::int32_t n = inst_.num_vars;
    sign_ = inst_.direction == Direction::Maximize ? -1.0 : 1.0;
    cmin_.resize(n);
    for (std::int32_t i = 0; i < n; ++i) cmin_[i] = sign_ * inst_.objective[i];
    for (double c : cmin_)
      if (!std::isfinite(c)) throw ModelError("non-finite objective");

    var_entries_.resize(n);
    rows_.resize(inst_.constraints.size());
    for (std::size_t r = 0; r < inst_.constraints.size(); ++r) {
      const auto& row = inst_.constraints[r];
      RowState& st = rows_[r];
      st.free_count = static_cast<std::int32_t>(row.cols.size());
      for (std::size_t k = 0; k < row.cols.size(); ++k) {
        const double a = row.coefs[k];
        var_entries_[row.cols[k]].push_back({static_cast<std::int32_t>(r), a});
        if (a > 0.0) st.max_free += a;
        else st.min_free += a;
        st.max_abs = std::max(st.max_abs, std::abs(a));
      }
    }
    value_.assign(n, -1);
    start_ = Clock::now();
  }

  SolveResult run(const std::map<std::int32_t, std::uint8_t>& root_fixed,
                  const std::optional<Assignment>& warm_start) {
    SolveResult result;
    if (warm_start) {
      if (warm_start->size() != inst_.num_vars)
        throw DimensionError("warm start length does not match instance");
      if (!is_feasible(inst_, *warm_start))
        throw PreconditionError("warm start assignment is infeasible");
      best_values_ = warm_start->values;
      best_min_ = sign_ * evaluate_objective(inst_, *warm_start);
      have_warm_ = true;
    }

    bool root_ok = true;
    std::vector<std::int32_t> pending;
    for (const auto& [var, val] : root_fixed) {
      if (var < 0 || var >= inst_.num_vars)
        throw DimensionError("fixed map references variable " + std::to_string(var) +
                             " outside [0," + std::to_string(inst_.num_vars) + ")");
      if (val > 1) throw ParameterError("fixed values must be 0 or 1");
      if (!fix(var, val, pending) || !propagate(pending)) { root_ok = false; break; }
    }

    if (root_ok) dive();

    result.nodes_used = nodes_used_;
    result.elapsed_s = elapsed();
    result.incumbents = std::move(stream_);
    if (best_values_.empty()) {
      result.status = stopped_ ? SolveStatus::NoSolutionFound : SolveStatus::Infeasible;
    } else {
      result.best = Assignment{best_values_, sign_ * best_min_};
      result.best_objective = sign_ * best_min_;
      result.status = stopped_ ? SolveStatus::FeasibleBudgetExhausted : SolveStatus::Optimal;
    }
    return result;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  bool budget_left() {
    if (budget_.node_limit && nodes_used_ >= *budget_.node_limit) return false;
    if (budget_.wall_time_s && elapsed() >= *budget_.wall_time_s) return false;
    return true;
  }

  // Pin a variable; updates row activities and detects conflicts. Forced
  // fixings implied by updated rows are appended to `pending`.
  bool fix(std::int32_t var, std::uint8_t val, std::vector<std::int32_t>& pending) {
    if (value_[var] >= 0) return value_[var] == static_cast<std::int8_t>(val);
    value_[var] = static_cast<std::int8_t>(val);
    trail_.push_back(var);
    for (const auto& [r, a] : var_entries_[var]) {
      RowState& st = rows_[r];
      if (a > 0.0) st.max_free -= a;
      else st.min_free -= a;
      if (val) st.act_fixed += a;
      --st.free_count;
      if (!row_consistent(r)) return false;
      if (row_may_force(r)) pending.push_back(r);
    }
    return true;
  }

  bool row_consistent(std::int32_t r) const {
    const RowState& st = rows_[r];
    const auto& row = inst_.constraints[r];
    const double lo = st.act_fixed + st.min_free;
    const double hi = st.act_fixed + st.max_free;
    switch (row.sense) {
      case Sense::Ge: return hi >= row.rhs - kEps;
      case Sense::Le: return lo <= row.rhs + kEps;
      case Sense::Eq: return hi >= row.rhs - kEps && lo <= row.rhs + kEps;
    }
    return true;
  }

  bool row_may_force(std::int32_t r) const {
    const RowState& st = rows_[r];
    if (st.free_count == 0) return false;
    const auto& row = inst_.constraints[r];
    const double ge_margin = st.act_fixed + st.max_free - row.rhs;
    const double le_margin = row.rhs - (st.act_fixed + st.min_free);
    if (row.sense != Sense::Le && ge_margin < st.max_abs - kEps) return true;
    if (row.sense != Sense::Ge && le_margin < st.max_abs - kEps) return true;
    return false;
  }

  bool propagate(std::vector<std::int32_t>& pending) {
    while (!pending.empty()) {
      const std::int32_t r = pending.back();
      pending.pop_back();
      const RowState& st = rows_[r];
      if (st.free_count == 0) continue;
      const auto& row = inst_.constraints[r];
      const double ge_margin = st.act_fixed + st.max_free - row.rhs;
      const double le_margin = row.rhs - (st.act_fixed + st.min_free);
      for (std::size_t k = 0; k < row.cols.size(); ++k) {
        const std::int32_t var = row.cols[k];
        if (value_[var] >= 0) continue;
        const double a = row.coefs[k];
        std::int8_t forced = -1;
        if (row.sense != Sense::Le) {  // >= part
          if (a > 0.0 && ge_margin < a - kEps) forced = 1;
          else if (a < 0.0 && ge_margin < -a - kEps) forced = 0;
        }
        if (forced < 0 && row.sense != Sense::Ge) {  // <= part
          if (a > 0.0 && le_margin < a - kEps) forced = 0;
          else if (a < 0.0 && le_margin < -a - kEps) forced = 1;
        }
        if (forced >= 0 && !fix(var, static_cast<std::uint8_t>(forced), pending)) return false;
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const std::int32_t var = trail_.back();
      trail_.pop_back();
      const std::int8_t val = value_[var];
      value_[var] = -1;
      for (const auto& [r, a] : var_entries_[var]) {
        RowState& st = rows_[r];
        if (a > 0.0) st.max_free += a;
        else st.min_free += a;
        if (val) st.act_fixed -= a;
        ++st.free_count;
      }
    }
  }

  double fixed_objective() const {
    double obj = 0.0;
    for (std::int32_t i = 0; i < inst_.num_vars; ++i)
      if (value_[i] == 1) obj += cmin_[i];
    return obj;
  }

  void offer_candidate(const std::vector<std::uint8_t>& values) {
    Assignment cand{values, std::nullopt};
    const double obj_min = sign_ * evaluate_objective(inst_, cand);
    if (!best_values_.empty() && obj_min >= best_min_) return;
    best_values_ = values;
    best_min_ = obj_min;
    IncumbentRecord rec;
    rec.assignment = Assignment{values, sign_ * obj_min};
    rec.objective = sign_ * obj_min;
    rec.elapsed_s = elapsed();
    rec.nodes = nodes_used_;
    stream_.push_back(rec);
    if (on_incumbent_) on_incumbent_(stream_.back());
  }

  // Assemble the 0/1 assignment for the current all-fixed state.
  void offer_leaf() {
    std::vector<std::uint8_t> values(inst_.num_vars);
    for (std::int32_t i = 0; i < inst_.num_vars; ++i)
      values[i] = value_[i] == 1 ? 1 : 0;
    offer_candidate(values);
  }

  // Recursive node processing; `dive` owns budget accounting.
  void dive() {
    if (stopped_ || !budget_left()) { stopped_ = true; return; }
    ++nodes_used_;

    std::vector<std::int32_t> free_vars;
    free_vars.reserve(inst_.num_vars);
    for (std::int32_t i = 0; i < inst_.num_vars; ++i)
      if (value_[i] < 0) free_vars.push_back(i);

    if (free_vars.empty()) {
      offer_leaf();
      return;
    }

    const double obj_fixed = fixed_objective();
    if (!best_values_.empty()) {
      // Objective-only bound: cheap reject before the LP.
      double trivial = obj_fixed;
      for (std::int32_t i : free_vars) trivial += std::min(0.0, cmin_[i]);
      if (trivial >= best_min_ - kBoundEps) return;
    }

    const LpNodeResult lp = bound_node(free_vars, obj_fixed);
    if (lp.prune) return;

    std::int32_t branch_var = free_vars.front();
    std::uint8_t first_val = cmin_[branch_var] <= 0.0 ? 1 : 0;
    if (lp.have_solution) {
      double best_frac = 2.0;
      bool integral = true;
      for (std::size_t k = 0; k < free_vars.size(); ++k) {
        const double v = lp.x[k];
        const double frac_dist = std::abs(v - 0.5);
        if (v > kEps && v < 1.0 - kEps) {
          integral = false;
          if (frac_dist < best_frac - 1e-12) {
            best_frac = frac_dist;
            branch_var = free_vars[k];
            first_val = v >= 0.5 ? 1 : 0;
          }
        }
      }
      if (integral) {
        // Round and verify exactly; the LP value equals the node bound, so
        // the node is finished either way.
        std::vector<std::uint8_t> values(inst_.num_vars);
        for (std::int32_t i = 0; i < inst_.num_vars; ++i)
          values[i] = value_[i] == 1 ? 1 : 0;
        for (std::size_t k = 0; k < free_vars.size(); ++k)
          values[free_vars[k]] = lp.x[k] >= 0.5 ? 1 : 0;
        Assignment cand{values, std::nullopt};
        if (is_feasible(inst_, cand)) {
          offer_candidate(values);
          return;
        }
        // Fall through to branching on the least certain variable.
        double best_gap = -1.0;
        for (std::size_t k = 0; k < free_vars.size(); ++k) {
          const double gap = std::abs(lp.x[k] - 0.5);
          if (gap > best_gap) { best_gap = gap; branch_var = free_vars[k]; first_val = lp.x[k] >= 0.5 ? 1 : 0; }
        }
      }
    }

    for (int child = 0; child < 2; ++child) {
      const std::uint8_t val = child == 0 ? first_val : static_cast<std::uint8_t>(1 - first_val);
      const std::size_t mark = trail_.size();
      std::vector<std::int32_t> pending;
      if (fix(branch_var, val, pending) && propagate(pending)) dive();
      undo_to(mark);
      if (stopped_) return;
    }
  }

  struct LpNodeResult {
    bool prune = false;
    bool have_solution = false;
    std::vector<double> x;
  };

  LpNodeResult bound_node(const std::vector<std::int32_t>& free_vars, double obj_fixed) {
    LpNodeResult out;
    std::int64_t lp_rows = 0;
    for (const auto& st : rows_)
      if (st.free_count >= 2) ++lp_rows;
    std::int64_t cap = options_.lp_iteration_cap;
    if (lp_rows > 0) {
      const double per_iter = 2.0 * static_cast<double>(lp_rows) * static_cast<double>(lp_rows);
      cap = std::min<std::int64_t>(cap,
                                   static_cast<std::int64_t>(options_.lp_node_work_budget / per_iter));
    }
    // Skip relaxations that the work budget cannot plausibly finish; the
    // objective-only bound plus propagation carries those nodes.
    if (cap < 2 * lp_rows + 50) return out;

    LpProblem lp;
    lp.num_vars = static_cast<std::int32_t>(free_vars.size());
    lp.objective.resize(free_vars.size());
    lp.lower.assign(free_vars.size(), 0.0);
    lp.upper.assign(free_vars.size(), 1.0);
    std::vector<std::int32_t> local(inst_.num_vars, -1);
    for (std::size_t k = 0; k < free_vars.size(); ++k) {
      local[free_vars[k]] = static_cast<std::int32_t>(k);
      lp.objective[k] = cmin_[free_vars[k]];
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const RowState& st = rows_[r];
      if (st.free_count < 2) continue;
      const auto& row = inst_.constraints[r];
      const double lo = st.act_fixed + st.min_free;
      const double hi = st.act_fixed + st.max_free;
      const bool ge_redundant = row.sense != Sense::Ge || lo >= row.rhs - kEps;
      const bool le_redundant = row.sense != Sense::Le || hi <= row.rhs + kEps;
      if (row.sense != Sense::Eq && ge_redundant && le_redundant) continue;
      LpRow lrow;
      lrow.sense = static_cast<int>(row.sense);
      lrow.rhs = row.rhs - st.act_fixed;
      for (std::size_t k = 0; k < row.cols.size(); ++k) {
        if (local[row.cols[k]] < 0) continue;
        lrow.cols.push_back(local[row.cols[k]]);
        lrow.coefs.push_back(row.coefs[k]);
      }
      lp.rows.push_back(std::move(lrow));
    }

    std::vector<double> hint;
    if (!best_values_.empty()) {
      hint.resize(free_vars.size());
      for (std::size_t k = 0; k < free_vars.size(); ++k)
        hint[k] = static_cast<double>(best_values_[free_vars[k]]);
    }

    const LpResult res = solve_lp(lp, cap, hint.empty() ? nullptr : &hint);
    switch (res.status) {
      case LpStatus::Infeasible:
        out.prune = true;
        return out;
      case LpStatus::IterationLimit: {
        // Capped: fall back to the objective-only bound (already tested).
        return out;
      }
      case LpStatus::Optimal: {
        const double bound = obj_fixed + res.objective;
        if (!best_values_.empty() && bound >= best_min_ - kBoundEps) {
          out.prune = true;
          return out;
        }
        out.have_solution = true;
        out.x = res.x;
        return out;
      }
    }
    return out;
  }

  const IlpInstance& inst_;
  SolveBudget budget_;
  IncumbentCallback on_incumbent_;
  SolverOptions options_;

  double sign_ = 1.0;
  std::vector<double> cmin_;
  std::vector<std::vector<std::pair<std::int32_t, double>>> var_entries_;
  std::vector<RowState> rows_;
  std::vector<std::int8_t> value_;
  std::vector<std::int32_t> trail_;

  std::vector<std::uint8_t> best_values_;
  double best_min_ = kInf;
  bool have_warm_ = false;
  std::vector<IncumbentRecord> stream_;

  std::int64_t nodes_used_ = 0;
  bool stopped_ = false;
  Clock::time_point start_;
};

}  // namespace

SolveResult solve(const IlpInstance& instance, const SolveBudget& budget,
                  const std::optional<Assignment>& warm_start,
                  const IncumbentCallback& on_incumbent, const SolverOptions& options) {
  BranchAndBound bb(instance, budget, on_incumbent, options);
  return bb.run({}, warm_start);
}

SolveResult solve_sub(const IlpInstance& instance,
                      const std::map<std::int32_t, std::uint8_t>& fixed,
                      const SolveBudget& budget, const Assignment& incumbent,
                      const IncumbentCallback& on_incumbent, const SolverOptions& options) {
  BranchAndBound bb(instance, budget, on_incumbent, options);
  return bb.run(fixed, incumbent);
}

}  // namespace hyplns
