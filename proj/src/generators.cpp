#include "hyplns/generators.hpp"

#include <algorithm>
#include <cstdint>
#include <cctype>
#include <string>
#include <unordered_set>
#include <vector>

#include "hyplns/errors.hpp"
#include "hyplns/rng.hpp"

namespace hyplns {

namespace {

// Distinct unordered pairs (u < v) of a simple graph on n nodes.
std::vector<std::pair<std::int32_t, std::int32_t>> sample_edges(std::int64_t n_nodes,
                                                                std::int64_t n_edges, Rng& rng) {
  const std::int64_t max_edges = n_nodes * (n_nodes - 1) / 2;
  if (n_edges > max_edges)
    throw ParameterError("requested " + std::to_string(n_edges) + " edges but a simple graph on " +
                         std::to_string(n_nodes) + " nodes has at most " +
                         std::to_string(max_edges));
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
  edges.reserve(static_cast<std::size_t>(n_edges));
  if (max_edges <= (1 << 20) && n_edges * 2 > max_edges) {
    // Dense request on a small graph: enumerate all pairs, partial shuffle.
    std::vector<std::pair<std::int32_t, std::int32_t>> all;
    all.reserve(static_cast<std::size_t>(max_edges));
    for (std::int32_t u = 0; u < n_nodes; ++u)
      for (std::int32_t v = u + 1; v < n_nodes; ++v) all.push_back({u, v});
    for (std::int64_t k = 0; k < n_edges; ++k) {
      const std::int64_t pick = k + static_cast<std::int64_t>(rng.below(all.size() - k));
      std::swap(all[k], all[pick]);
      edges.push_back(all[k]);
    }
  } else {
    std::unordered_set<std::int64_t> seen;
    seen.reserve(static_cast<std::size_t>(n_edges) * 2);
    while (static_cast<std::int64_t>(edges.size()) < n_edges) {
      std::int32_t u = static_cast<std::int32_t>(rng.below(n_nodes));
      std::int32_t v = static_cast<std::int32_t>(rng.below(n_nodes));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (seen.insert(static_cast<std::int64_t>(u) * n_nodes + v).second) edges.push_back({u, v});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

IlpInstance graph_instance(std::int64_t n_nodes, std::int64_t n_edges, std::uint64_t seed,
                           Direction direction, Sense sense) {
  if (n_nodes < 2) throw ParameterError("graph families require at least 2 nodes");
  if (n_edges < 0) throw ParameterError("negative edge count");
  Rng rng(seed);
  const auto edges = sample_edges(n_nodes, n_edges, rng);
  IlpInstance inst;
  inst.num_vars = static_cast<std::int32_t>(n_nodes);
  inst.direction = direction;
  inst.objective.assign(static_cast<std::size_t>(n_nodes), 1.0);
  inst.constraints.reserve(edges.size());
  for (const auto& [u, v] : edges) inst.constraints.push_back({{u, v}, {1.0, 1.0}, sense, 1.0});
  return inst;
}

// k distinct values in [0, n); k is tiny (4 or 5) so rejection is cheap.
void sample_distinct(Rng& rng, std::int64_t n, int k, std::vector<std::int32_t>& out) {
  out.clear();
  while (static_cast<int>(out.size()) < k) {
    const std::int32_t pick = static_cast<std::int32_t>(rng.below(n));
    if (std::find(out.begin(), out.end(), pick) == out.end()) out.push_back(pick);
  }
}

// Reassigns uncovered items into random groups by replacing a slot whose item
// is covered at least twice, so no replacement uncovers anything.
void patch_coverage(std::vector<std::vector<std::int32_t>>& groups, std::int64_t n_items,
                    Rng& rng) {
  std::vector<std::int32_t> count(static_cast<std::size_t>(n_items), 0);
  for (const auto& g : groups)
    for (std::int32_t item : g) ++count[item];
  for (std::int32_t item = 0; item < n_items; ++item) {
    if (count[item] > 0) continue;
    for (;;) {
      auto& g = groups[rng.below(groups.size())];
      std::vector<int> replaceable;
      for (int s = 0; s < static_cast<int>(g.size()); ++s)
        if (count[g[s]] >= 2) replaceable.push_back(s);
      if (replaceable.empty()) continue;
      const int slot = replaceable[rng.below(replaceable.size())];
      --count[g[slot]];
      g[slot] = item;
      ++count[item];
      break;
    }
  }
}

IlpInstance covering_instance(const std::vector<std::vector<std::int32_t>>& groups,
                              std::int64_t n_items, const std::vector<double>& objective,
                              Direction direction, Sense sense) {
  // Item rows reference the groups containing them, in group order.
  std::vector<std::vector<std::int32_t>> members(static_cast<std::size_t>(n_items));
  for (std::int32_t g = 0; g < static_cast<std::int32_t>(groups.size()); ++g)
    for (std::int32_t item : groups[g]) members[item].push_back(g);
  IlpInstance inst;
  inst.num_vars = static_cast<std::int32_t>(groups.size());
  inst.direction = direction;
  inst.objective = objective;
  for (std::int64_t item = 0; item < n_items; ++item) {
    if (members[item].empty()) continue;
    Constraint row;
    row.cols = members[item];
    row.coefs.assign(row.cols.size(), 1.0);
    row.sense = sense;
    row.rhs = 1.0;
    inst.constraints.push_back(std::move(row));
  }
  return inst;
}

}  // namespace

Family family_from_string(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "mis") return Family::MIS;
  if (s == "mvc") return Family::MVC;
  if (s == "sc") return Family::SC;
  if (s == "ca") return Family::CA;
  throw ParameterError("unknown family '" + name + "' (expected mis|mvc|sc|ca)");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::MIS: return "mis";
    case Family::MVC: return "mvc";
    case Family::SC: return "sc";
    case Family::CA: return "ca";
  }
  return "?";
}

IlpInstance gen_mis(std::int64_t n_nodes, std::int64_t n_edges, std::uint64_t seed) {
  return graph_instance(n_nodes, n_edges, seed, Direction::Maximize, Sense::Le);
}

IlpInstance gen_mvc(std::int64_t n_nodes, std::int64_t n_edges, std::uint64_t seed) {
  return graph_instance(n_nodes, n_edges, seed, Direction::Minimize, Sense::Ge);
}

IlpInstance gen_sc(std::int64_t n_sets, std::int64_t n_items, std::uint64_t seed) {
  if (n_items < 4) throw ParameterError("set covering requires at least 4 items");
  if (4 * n_sets < n_items)
    throw ParameterError("set covering needs n_sets >= ceil(n_items/4) to cover every item");
  Rng rng(seed);
  std::vector<std::vector<std::int32_t>> sets(static_cast<std::size_t>(n_sets));
  for (auto& s : sets) sample_distinct(rng, n_items, 4, s);
  patch_coverage(sets, n_items, rng);
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return covering_instance(sets, n_items,
                           std::vector<double>(static_cast<std::size_t>(n_sets), 1.0),
                           Direction::Minimize, Sense::Ge);
}

IlpInstance gen_ca(std::int64_t n_bids, std::int64_t n_items, std::uint64_t seed) {
  if (n_items < 5) throw ParameterError("combinatorial auctions require at least 5 items");
  if (n_bids < 1) throw ParameterError("combinatorial auctions require at least 1 bid");
  Rng rng(seed);
  std::vector<std::vector<std::int32_t>> bids(static_cast<std::size_t>(n_bids));
  for (auto& b : bids) sample_distinct(rng, n_items, 5, b);
  // Keep one row per item (Table-6 sizing) whenever the bids can cover them.
  if (5 * n_bids >= n_items) patch_coverage(bids, n_items, rng);
  for (auto& b : bids) std::sort(b.begin(), b.end());
  std::vector<double> item_value(static_cast<std::size_t>(n_items));
  for (auto& v : item_value) v = static_cast<double>(1 + rng.below(100));
  std::vector<double> prices(static_cast<std::size_t>(n_bids));
  for (std::int64_t b = 0; b < n_bids; ++b) {
    double price = static_cast<double>(rng.below(11));
    for (std::int32_t item : bids[b]) price += item_value[item];
    prices[b] = price;
  }
  return covering_instance(bids, n_items, prices, Direction::Maximize, Sense::Le);
}

IlpInstance generate(const GenSpec& spec) {
  if (spec.primary < 2) throw ParameterError("generator primary size must be >= 2");
  if (spec.secondary < 1) throw ParameterError("generator secondary size must be >= 1");
  switch (spec.family) {
    case Family::MIS: return gen_mis(spec.primary, spec.secondary, spec.seed);
    case Family::MVC: return gen_mvc(spec.primary, spec.secondary, spec.seed);
    case Family::SC: return gen_sc(spec.primary, spec.secondary, spec.seed);
    case Family::CA: return gen_ca(spec.primary, spec.secondary, spec.seed);
  }
  throw ParameterError("unknown family");
}

}  // namespace hyplns
