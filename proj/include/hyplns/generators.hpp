#pragma once

#include <cstdint>
#include <string>

#include "hyplns/ilp.hpp"

namespace hyplns {

enum class Family { MIS, MVC, SC, CA };

Family family_from_string(const std::string& name);
std::string to_string(Family family);

// Benchmark instance request: `primary` is the variable-side size and
// `secondary` the constraint-side size of the family (graph nodes/edges,
// sets/items, bids/items).
struct GenSpec {
  Family family = Family::MIS;
  std::int64_t primary = 0;
  std::int64_t secondary = 0;
  std::uint64_t seed = 0;
};

// Maximum independent set on a random simple graph: maximize sum x_i with
// x_u + x_v <= 1 per sampled edge. Deterministic in the seed.
IlpInstance gen_mis(std::int64_t n_nodes, std::int64_t n_edges, std::uint64_t seed);

// Minimum vertex cover on the same graph construction: minimize sum x_i
// with x_u + x_v >= 1 per edge.
IlpInstance gen_mvc(std::int64_t n_nodes, std::int64_t n_edges, std::uint64_t seed);

// Set covering: minimize sum x_j, every item covered by at least one chosen
// set. Each set holds 4 distinct items; uncovered items are patched into
// random sets so the all-ones vector is always feasible.
IlpInstance gen_sc(std::int64_t n_sets, std::int64_t n_items, std::uint64_t seed);

// Combinatorial auction winner determination: maximize priced bids, each item
// sold at most once. Each bid holds 5 distinct items; prices are the sum of
// per-item base values (integers 1..100) plus integer noise in [0,10].
IlpInstance gen_ca(std::int64_t n_bids, std::int64_t n_items, std::uint64_t seed);

IlpInstance generate(const GenSpec& spec);

}  // namespace hyplns
