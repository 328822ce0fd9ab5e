#pragma once

#include <cstdint>
#include <vector>

#include "hyplns/ilp.hpp"
#include "hyplns/pool.hpp"

namespace hyplns {

struct BipartiteEdge {
  std::int32_t var;
  std::int32_t cons;
  double feature;  // a_ij / max|a|
};

// Bipartite encoding of an instance plus the dynamic search state. Feature
// layouts (row-major):
//   variable (5): [c_i/max|c|, degree/max_degree, current value x_i,
//                  confidence f_i, random feature in [0,1)]
//   constraint (5): [b_j/max|b|, degree/max_degree, one-hot sense (>=,<=,=)]
// One edge per structural nonzero, ordered row by row.
struct BipartiteGraph {
  static constexpr int kVarFeatures = 5;
  static constexpr int kConsFeatures = 5;
  static constexpr int kEdgeFeatures = 1;

  std::int32_t num_vars = 0;
  std::int32_t num_cons = 0;
  std::vector<double> var_features;   // num_vars x kVarFeatures
  std::vector<double> cons_features;  // num_cons x kConsFeatures
  std::vector<BipartiteEdge> edges;
  std::uint64_t random_seed = 0;

  double var_feature(std::int32_t i, int f) const { return var_features[i * kVarFeatures + f]; }
  double cons_feature(std::int32_t j, int f) const { return cons_features[j * kConsFeatures + f]; }
};

// Builds the RL state graph. The random feature column is a pure function of
// the seed, so rebuilding with the same seed only moves the dynamic columns
// (current value, confidence).
BipartiteGraph build_bipartite(const IlpInstance& instance, const SolutionPool& pool,
                               const Assignment& current, std::uint64_t seed);

}  // namespace hyplns
