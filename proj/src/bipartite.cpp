#include "hyplns/bipartite.hpp"

#include <algorithm>
#include <cmath>

#include "hyplns/errors.hpp"
#include "hyplns/rng.hpp"

namespace hyplns {

BipartiteGraph build_bipartite(const IlpInstance& instance, const SolutionPool& pool,
                               const Assignment& current, std::uint64_t seed) {
  if (pool.empty()) throw PreconditionError("build_bipartite requires a non-empty pool");
  if (current.size() != instance.num_vars)
    throw DimensionError("current assignment length does not match instance");

  const std::int32_t n = instance.num_vars;
  const std::int32_t m = instance.num_cons();

  BipartiteGraph g;
  g.num_vars = n;
  g.num_cons = m;
  g.random_seed = seed;
  g.var_features.assign(static_cast<std::size_t>(n) * BipartiteGraph::kVarFeatures, 0.0);
  g.cons_features.assign(static_cast<std::size_t>(m) * BipartiteGraph::kConsFeatures, 0.0);
  g.edges.reserve(static_cast<std::size_t>(instance.num_nonzeros()));

  std::vector<std::int32_t> var_degree(n, 0);
  double max_abs_coef = 0.0;
  double max_abs_rhs = 0.0;
  for (const auto& row : instance.constraints) {
    max_abs_rhs = std::max(max_abs_rhs, std::abs(row.rhs));
    for (std::size_t k = 0; k < row.cols.size(); ++k) {
      ++var_degree[row.cols[k]];
      max_abs_coef = std::max(max_abs_coef, std::abs(row.coefs[k]));
    }
  }
  double max_abs_obj = 0.0;
  for (double c : instance.objective) max_abs_obj = std::max(max_abs_obj, std::abs(c));
  std::int32_t max_var_degree = 0;
  for (std::int32_t d : var_degree) max_var_degree = std::max(max_var_degree, d);
  std::int32_t max_cons_degree = 0;
  for (const auto& row : instance.constraints)
    max_cons_degree = std::max(max_cons_degree, static_cast<std::int32_t>(row.cols.size()));

  const std::vector<double> confidence = confidence_scores(pool);

  Rng rng(seed);
  for (std::int32_t i = 0; i < n; ++i) {
    double* f = &g.var_features[static_cast<std::size_t>(i) * BipartiteGraph::kVarFeatures];
    f[0] = max_abs_obj > 0.0 ? instance.objective[i] / max_abs_obj : 0.0;
    f[1] = max_var_degree > 0 ? static_cast<double>(var_degree[i]) / max_var_degree : 0.0;
    f[2] = static_cast<double>(current.values[i]);
    f[3] = confidence[i];
    f[4] = rng.uniform();
  }

  const double coef_scale = max_abs_coef > 0.0 ? max_abs_coef : 1.0;
  for (std::int32_t j = 0; j < m; ++j) {
    const auto& row = instance.constraints[j];
    double* f = &g.cons_features[static_cast<std::size_t>(j) * BipartiteGraph::kConsFeatures];
    f[0] = max_abs_rhs > 0.0 ? row.rhs / max_abs_rhs : 0.0;
    f[1] = max_cons_degree > 0 ? static_cast<double>(row.cols.size()) / max_cons_degree : 0.0;
    f[2 + static_cast<int>(row.sense)] = 1.0;
    for (std::size_t k = 0; k < row.cols.size(); ++k)
      g.edges.push_back({row.cols[k], j, row.coefs[k] / coef_scale});
  }
  return g;
}

}  // namespace hyplns
