#include "hyplns/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyplns/errors.hpp"

namespace hyplns {

namespace {

constexpr double kPriceTol = 1e-7;
constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kStallLimit = 60;  // degenerate pivots before switching to Bland

enum class ColState : std::uint8_t { Basic, AtLower, AtUpper };

struct Tableau {
  std::int32_t m = 0;       // rows
  std::int32_t n_struct = 0;
  std::int32_t n_total = 0;  // structural + slacks + artificials
  // Column-major sparse matrix of the equality system Ax + s (+ z) = b.
  std::vector<std::vector<std::pair<std::int32_t, double>>> cols;
  std::vector<double> lb, ub, cost;
  std::vector<double> rhs;

  std::vector<double> binv;     // m x m, row-major
  std::vector<std::int32_t> basic;  // row -> column
  std::vector<ColState> state;
  std::vector<double> value;    // current value per column
  std::vector<double> work_w;   // B^-1 A_q
  std::vector<double> work_y;   // simplex multipliers

  double& binv_at(std::int32_t r, std::int32_t c) { return binv[static_cast<std::size_t>(r) * m + c]; }
};

// w = B^-1 A_q using the sparse column.
void ftran(Tableau& t, std::int32_t q) {
  std::fill(t.work_w.begin(), t.work_w.end(), 0.0);
  for (const auto& [row, coef] : t.cols[q]) {
    if (coef == 0.0) continue;
    const double* bcol = &t.binv[0];
    for (std::int32_t k = 0; k < t.m; ++k)
      t.work_w[k] += coef * bcol[static_cast<std::size_t>(k) * t.m + row];
  }
}

// y' = c_B' B^-1.
void compute_multipliers(Tableau& t) {
  std::fill(t.work_y.begin(), t.work_y.end(), 0.0);
  for (std::int32_t k = 0; k < t.m; ++k) {
    const double cb = t.cost[t.basic[k]];
    if (cb == 0.0) continue;
    const double* row = &t.binv[static_cast<std::size_t>(k) * t.m];
    for (std::int32_t r = 0; r < t.m; ++r) t.work_y[r] += cb * row[r];
  }
}

double reduced_cost(const Tableau& t, std::int32_t j) {
  double d = t.cost[j];
  for (const auto& [row, coef] : t.cols[j]) d -= t.work_y[row] * coef;
  return d;
}

struct PivotPick {
  std::int32_t entering = -1;
  double dj = 0.0;
};

PivotPick price(Tableau& t, bool bland) {
  compute_multipliers(t);
  PivotPick pick;
  double best = kPriceTol;
  for (std::int32_t j = 0; j < t.n_total; ++j) {
    if (t.state[j] == ColState::Basic) continue;
    if (t.ub[j] - t.lb[j] <= 0.0) continue;  // fixed (incl. retired artificials)
    const double d = reduced_cost(t, j);
    const bool eligible =
        (t.state[j] == ColState::AtLower && d < -kPriceTol) ||
        (t.state[j] == ColState::AtUpper && d > kPriceTol);
    if (!eligible) continue;
    if (bland) { pick.entering = j; pick.dj = d; return pick; }
    if (std::abs(d) > best) {
      best = std::abs(d);
      pick.entering = j;
      pick.dj = d;
    }
  }
  return pick;
}

// One pivot or bound flip; returns the step length taken.
double step(Tableau& t, std::int32_t q) {
  ftran(t, q);
  const bool from_lower = t.state[q] == ColState::AtLower;
  // Basic values change by -sigma * ratio * w, sigma=+1 when entering rises.
  const double sigma = from_lower ? 1.0 : -1.0;

  double limit = t.ub[q] - t.lb[q];  // bound-flip distance
  std::int32_t leave_row = -1;
  bool leave_to_upper = false;

  for (std::int32_t k = 0; k < t.m; ++k) {
    const double wk = sigma * t.work_w[k];
    const std::int32_t bj = t.basic[k];
    if (wk > kPivotTol) {
      const double room = (t.value[bj] - t.lb[bj]) / wk;
      if (room < limit - kPivotTol) { limit = room; leave_row = k; leave_to_upper = false; }
    } else if (wk < -kPivotTol) {
      const double room = (t.ub[bj] - t.value[bj]) / (-wk);
      if (room < limit - kPivotTol) { limit = room; leave_row = k; leave_to_upper = true; }
    }
  }
  if (limit >= kInf) throw ModelError("simplex step unbounded on a box-bounded problem");
  if (limit < 0.0) limit = 0.0;

  // Apply the move to basic values and the entering variable.
  for (std::int32_t k = 0; k < t.m; ++k) {
    const std::int32_t bj = t.basic[k];
    t.value[bj] -= sigma * limit * t.work_w[k];
  }
  t.value[q] += sigma * limit;

  if (leave_row < 0) {  // bound flip, basis unchanged
    t.state[q] = from_lower ? ColState::AtUpper : ColState::AtLower;
    t.value[q] = from_lower ? t.ub[q] : t.lb[q];
    return limit;
  }

  const std::int32_t leaving = t.basic[leave_row];
  t.state[leaving] = leave_to_upper ? ColState::AtUpper : ColState::AtLower;
  t.value[leaving] = leave_to_upper ? t.ub[leaving] : t.lb[leaving];
  t.basic[leave_row] = q;
  t.state[q] = ColState::Basic;

  // Eta update of B^-1 with pivot element w[leave_row].
  const double piv = t.work_w[leave_row];
  double* prow = &t.binv[static_cast<std::size_t>(leave_row) * t.m];
  const double inv_piv = 1.0 / piv;
  for (std::int32_t c = 0; c < t.m; ++c) prow[c] *= inv_piv;
  for (std::int32_t k = 0; k < t.m; ++k) {
    if (k == leave_row) continue;
    const double f = t.work_w[k];
    if (f == 0.0) continue;
    double* row = &t.binv[static_cast<std::size_t>(k) * t.m];
    for (std::int32_t c = 0; c < t.m; ++c) row[c] -= f * prow[c];
  }
  return limit;
}

// Recompute basic values as B^-1 (b - N x_N); keeps drift in check after
// many pivots.
void refresh_basics(Tableau& t) {
  std::vector<double> resid = t.rhs;
  for (std::int32_t j = 0; j < t.n_total; ++j) {
    if (t.state[j] == ColState::Basic) continue;
    const double v = t.value[j];
    if (v == 0.0) continue;
    for (const auto& [row, coef] : t.cols[j]) resid[row] -= coef * v;
  }
  for (std::int32_t k = 0; k < t.m; ++k) {
    const double* row = &t.binv[static_cast<std::size_t>(k) * t.m];
    double v = 0.0;
    for (std::int32_t r = 0; r < t.m; ++r) v += row[r] * resid[r];
    t.value[t.basic[k]] = v;
  }
}

struct PhaseOutcome {
  bool hit_limit = false;
  std::int64_t iterations = 0;
};

PhaseOutcome run_phase(Tableau& t, std::int64_t max_iterations) {
  PhaseOutcome out;
  int stall = 0;
  while (out.iterations < max_iterations) {
    const bool bland = stall >= kStallLimit;
    const PivotPick pick = price(t, bland);
    if (pick.entering < 0) return out;  // optimal for this phase
    ++out.iterations;
    const double moved = step(t, pick.entering);
    stall = moved > kPivotTol ? 0 : stall + 1;
    if ((out.iterations & 0x3FF) == 0) refresh_basics(t);
  }
  out.hit_limit = true;
  return out;
}

}  // namespace

LpResult solve_lp(const LpProblem& p, std::int64_t max_iterations,
                  const std::vector<double>* start_hint) {
  const std::int32_t n = p.num_vars;
  const std::int32_t m = static_cast<std::int32_t>(p.rows.size());
  LpResult result;

  if (m == 0) {
    // Pure bound problem.
    result.status = LpStatus::Optimal;
    result.x.resize(n);
    for (std::int32_t i = 0; i < n; ++i) {
      if (p.lower[i] > p.upper[i] + kFeasTol) { result.status = LpStatus::Infeasible; return result; }
      result.x[i] = p.objective[i] >= 0.0 ? p.lower[i] : p.upper[i];
      result.objective += p.objective[i] * result.x[i];
    }
    return result;
  }

  Tableau t;
  t.m = m;
  t.n_struct = n;
  t.n_total = n + m;
  t.cols.resize(static_cast<std::size_t>(t.n_total));
  t.lb.assign(t.n_total, 0.0);
  t.ub.assign(t.n_total, kInf);
  t.cost.assign(t.n_total, 0.0);
  t.rhs.assign(m, 0.0);

  for (std::int32_t i = 0; i < n; ++i) {
    t.lb[i] = p.lower[i];
    t.ub[i] = p.upper[i];
    if (t.lb[i] > t.ub[i] + kFeasTol) { result.status = LpStatus::Infeasible; return result; }
  }

  // Normalize rows: '>=' negated so every slack has bounds [0, su].
  for (std::int32_t r = 0; r < m; ++r) {
    const LpRow& row = p.rows[r];
    const double flip = row.sense == 0 ? -1.0 : 1.0;
    for (std::size_t k = 0; k < row.cols.size(); ++k)
      t.cols[row.cols[k]].push_back({r, flip * row.coefs[k]});
    t.rhs[r] = flip * row.rhs;
    const std::int32_t slack = n + r;
    t.cols[slack].push_back({r, 1.0});
    t.ub[slack] = row.sense == 2 ? 0.0 : kInf;
  }

  // Initial nonbasic point: hint values clamped into the box, else lower.
  t.state.assign(t.n_total, ColState::AtLower);
  t.value.assign(t.n_total, 0.0);
  for (std::int32_t i = 0; i < n; ++i) {
    double v = start_hint ? std::clamp((*start_hint)[i], t.lb[i], t.ub[i]) : t.lb[i];
    const bool upper_closer = std::isfinite(t.ub[i]) && (v - t.lb[i]) > (t.ub[i] - v);
    t.state[i] = upper_closer ? ColState::AtUpper : ColState::AtLower;
    t.value[i] = upper_closer ? t.ub[i] : t.lb[i];
  }

  // Slack values implied by the starting point; infeasible rows get an
  // artificial basic variable instead.
  std::vector<double> implied(m);
  for (std::int32_t r = 0; r < m; ++r) implied[r] = t.rhs[r];
  for (std::int32_t i = 0; i < n; ++i) {
    if (t.value[i] == 0.0) continue;
    for (const auto& [row, coef] : t.cols[i]) implied[row] -= coef * t.value[i];
  }

  t.basic.assign(m, -1);
  std::vector<std::int32_t> artificial_of_row(m, -1);
  for (std::int32_t r = 0; r < m; ++r) {
    const std::int32_t slack = n + r;
    if (implied[r] >= -kFeasTol && implied[r] <= t.ub[slack] + kFeasTol) {
      t.basic[r] = slack;
      t.state[slack] = ColState::Basic;
      t.value[slack] = std::clamp(implied[r], 0.0, t.ub[slack]);
    } else {
      const double sign = implied[r] < 0.0 ? -1.0 : 1.0;
      const std::int32_t art = t.n_total++;
      t.cols.push_back({{r, sign}});
      t.lb.push_back(0.0);
      t.ub.push_back(kInf);
      t.cost.push_back(0.0);
      t.state.push_back(ColState::Basic);
      t.value.push_back(std::abs(implied[r]));
      t.basic[r] = art;
      artificial_of_row[r] = art;
      // slack stays nonbasic at zero
    }
  }

  t.binv.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (std::int32_t r = 0; r < m; ++r) {
    const std::int32_t bj = t.basic[r];
    t.binv_at(r, r) = t.cols[bj][0].second == -1.0 ? -1.0 : 1.0;
  }
  t.work_w.assign(m, 0.0);
  t.work_y.assign(m, 0.0);

  std::int64_t remaining = max_iterations;
  const bool need_phase1 =
      std::any_of(artificial_of_row.begin(), artificial_of_row.end(), [](int a) { return a >= 0; });
  if (need_phase1) {
    for (std::int32_t r = 0; r < m; ++r)
      if (artificial_of_row[r] >= 0) t.cost[artificial_of_row[r]] = 1.0;
    const PhaseOutcome ph1 = run_phase(t, remaining);
    result.iterations += ph1.iterations;
    remaining -= ph1.iterations;
    double infeas = 0.0;
    for (std::int32_t r = 0; r < m; ++r)
      if (artificial_of_row[r] >= 0) infeas += t.value[artificial_of_row[r]];
    if (ph1.hit_limit) { result.status = LpStatus::IterationLimit; return result; }
    if (infeas > 1e-6) { result.status = LpStatus::Infeasible; return result; }
    // Retire artificials: pin to zero; basic ones may stay at level zero.
    for (std::int32_t r = 0; r < m; ++r) {
      const std::int32_t art = artificial_of_row[r];
      if (art < 0) continue;
      t.cost[art] = 0.0;
      t.ub[art] = 0.0;
      if (t.state[art] != ColState::Basic) t.value[art] = 0.0;
    }
  }

  for (std::int32_t i = 0; i < n; ++i) t.cost[i] = p.objective[i];
  for (std::int32_t j = n; j < t.n_total; ++j) t.cost[j] = 0.0;
  const PhaseOutcome ph2 = run_phase(t, remaining);
  result.iterations += ph2.iterations;
  if (ph2.hit_limit) { result.status = LpStatus::IterationLimit; return result; }

  refresh_basics(t);
  result.status = LpStatus::Optimal;
  result.x.assign(t.value.begin(), t.value.begin() + n);
  for (std::int32_t i = 0; i < n; ++i) {
    result.x[i] = std::clamp(result.x[i], t.lb[i], t.ub[i]);
    result.objective += p.objective[i] * result.x[i];
  }
  return result;
}

}  // namespace hyplns
