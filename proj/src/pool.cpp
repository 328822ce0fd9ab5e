#include "hyplns/pool.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hyplns/errors.hpp"

namespace hyplns {

void SolutionPool::add(const Assignment& assignment, double objective) {
  if (assignment.size() != num_vars_)
    throw DimensionError("pool entry length does not match instance");
  PoolEntry entry{assignment, objective, next_discovery_++};
  entry.assignment.objective_value = objective;
  entries_.push_back(std::move(entry));
  enforce_capacity();
}

void SolutionPool::enforce_capacity() {
  if (!capacity_ || size() <= *capacity_) return;
  auto ranks = rank(*this);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < entries_.size(); ++j)
    if (ranks[j] <= *capacity_) keep.push_back(j);
  std::vector<PoolEntry> kept;
  kept.reserve(keep.size());
  for (std::size_t j : keep) kept.push_back(std::move(entries_[j]));
  entries_ = std::move(kept);
}

std::vector<std::int32_t> rank(const SolutionPool& pool) {
  if (pool.empty()) throw PreconditionError("rank() requires a non-empty pool");
  const auto& entries = pool.entries();
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  const bool minimize = pool.direction() == Direction::Minimize;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (entries[a].objective != entries[b].objective)
      return minimize ? entries[a].objective < entries[b].objective
                      : entries[a].objective > entries[b].objective;
    return entries[a].discovery_index < entries[b].discovery_index;
  });
  std::vector<std::int32_t> ranks(entries.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    ranks[order[pos]] = static_cast<std::int32_t>(pos) + 1;
  return ranks;
}

std::vector<double> confidence_scores(const SolutionPool& pool,
                                      const std::vector<std::int32_t>& ranks) {
  if (pool.empty()) throw PreconditionError("confidence_scores() requires a non-empty pool");
  if (ranks.size() != static_cast<std::size_t>(pool.size()))
    throw DimensionError("rank vector length does not match pool size");
  const std::int32_t n = pool.num_vars();
  std::vector<double> raw(n, 0.0);
  const auto& entries = pool.entries();
  for (std::size_t j = 0; j < entries.size(); ++j) {
    const double weight = 1.0 / static_cast<double>(ranks[j]);
    const auto& values = entries[j].assignment.values;
    for (std::int32_t i = 0; i < n; ++i)
      if (values[i]) raw[i] += weight;
  }
  const double max_raw = *std::max_element(raw.begin(), raw.end());
  if (max_raw <= 0.0) return std::vector<double>(n, 0.0);
  for (double& v : raw) v /= max_raw;
  return raw;
}

std::vector<double> confidence_scores(const SolutionPool& pool) {
  return confidence_scores(pool, rank(pool));
}

std::vector<double> selection_probabilities(const Assignment& current,
                                            const std::vector<double>& confidence) {
  const std::size_t n = current.values.size();
  if (confidence.size() != n)
    throw DimensionError("confidence vector length does not match assignment");
  if (n == 0) throw DimensionError("empty assignment");
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i)
    raw[i] = std::abs(static_cast<double>(current.values[i]) - confidence[i]);

  bool all_equal = true;
  for (std::size_t i = 1; i < n; ++i)
    if (raw[i] != raw[0]) { all_equal = false; break; }
  if (all_equal) return std::vector<double>(n, 1.0 / static_cast<double>(n));

  double min_positive = std::numeric_limits<double>::infinity();
  for (double v : raw)
    if (v > 0.0) min_positive = std::min(min_positive, v);
  double sum = 0.0;
  for (double& v : raw) {
    if (v == 0.0) v = min_positive;
    sum += v;
  }
  for (double& v : raw) v /= sum;
  return raw;
}

std::vector<double> uniform_probabilities(std::int32_t n) {
  if (n <= 0) throw ParameterError("uniform_probabilities requires n > 0");
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

std::vector<std::int32_t> sample_neighborhood(const std::vector<double>& probabilities,
                                              std::int32_t size, Rng& rng) {
  const std::int32_t n = static_cast<std::int32_t>(probabilities.size());
  if (size < 1 || size > n)
    throw ParameterError("neighborhood size " + std::to_string(size) + " out of [1," +
                         std::to_string(n) + "]");
  std::vector<std::pair<double, std::int32_t>> keys(n);
  for (std::int32_t i = 0; i < n; ++i) {
    if (probabilities[i] <= 0.0)
      throw ParameterError("sample_neighborhood requires strictly positive probabilities");
    keys[i] = {rng.exponential() / probabilities[i], i};
  }
  std::partial_sort(keys.begin(), keys.begin() + size, keys.end());
  std::vector<std::int32_t> picked(size);
  for (std::int32_t k = 0; k < size; ++k) picked[k] = keys[k].second;
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<std::int32_t> sample_neighborhood(const std::vector<double>& probabilities,
                                              std::int32_t size, std::uint64_t seed) {
  Rng rng(seed);
  return sample_neighborhood(probabilities, size, rng);
}

void update_pool(SolutionPool& pool, const SolveResult& result) {
  for (const auto& inc : result.incumbents) pool.add(inc.assignment, inc.objective);
}

}  // namespace hyplns
