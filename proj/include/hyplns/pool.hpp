#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyplns/ilp.hpp"
#include "hyplns/rng.hpp"
#include "hyplns/solve_types.hpp"

namespace hyplns {

struct PoolEntry {
  Assignment assignment;
  double objective = 0.0;
  std::int64_t discovery_index = 0;
};

// Ranked set of feasible assignments. Entries keep discovery order; ranking
// is computed on demand. By default the pool keeps everything; an optional
// capacity keeps only the best-ranked entries.
class SolutionPool {
 public:
  SolutionPool(Direction direction, std::int32_t num_vars,
               std::optional<std::int32_t> capacity = std::nullopt)
      : direction_(direction), num_vars_(num_vars), capacity_(capacity) {}

  Direction direction() const { return direction_; }
  std::int32_t num_vars() const { return num_vars_; }
  std::int32_t size() const { return static_cast<std::int32_t>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  const std::vector<PoolEntry>& entries() const { return entries_; }

  void add(const Assignment& assignment, double objective);

 private:
  void enforce_capacity();

  Direction direction_;
  std::int32_t num_vars_;
  std::optional<std::int32_t> capacity_;
  std::vector<PoolEntry> entries_;
  std::int64_t next_discovery_ = 0;
};

// Strict 1..q quality ranks: rank 1 is the best objective under the pool's
// direction; ties broken by smaller discovery index.
std::vector<std::int32_t> rank(const SolutionPool& pool);

// Rank-weighted confidence score per variable:
//   f_i = (sum_j x_{i,j}/r_j) / max_i (sum_j x_{i,j}/r_j),
// all zeros when the pool never sets any variable to 1.
std::vector<double> confidence_scores(const SolutionPool& pool,
                                      const std::vector<std::int32_t>& ranks);

std::vector<double> confidence_scores(const SolutionPool& pool);

// Selection probabilities from |x_i - f_i| with the two edge rules: exact
// zeros are lifted to the smallest positive deviation, and a fully uniform
// deviation vector (including all-zero) collapses to 1/n.
std::vector<double> selection_probabilities(const Assignment& current,
                                            const std::vector<double>& confidence);

// Uniform 1/n vector (ablation selection rule).
std::vector<double> uniform_probabilities(std::int32_t n);

// Weighted sampling without replacement via exponential keys: draw
// key_i = Exp(1)/p_i and keep the size smallest. Returns sorted indices.
std::vector<std::int32_t> sample_neighborhood(const std::vector<double>& probabilities,
                                              std::int32_t size, Rng& rng);
std::vector<std::int32_t> sample_neighborhood(const std::vector<double>& probabilities,
                                              std::int32_t size, std::uint64_t seed);

// Appends every incumbent of a solve result with fresh discovery indices.
void update_pool(SolutionPool& pool, const SolveResult& result);

}  // namespace hyplns
