#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "hyplns/bipartite.hpp"

namespace hyplns {

class PolicyNet;

// Neighborhood-size action: a ratio in [kMinRatio, 1-kMinRatio] and the
// integer size it induces, l = clamp(round(a*n), 1, n).
struct SizeDecision {
  double ratio = 0.0;
  std::int32_t size = 0;
  double log_prob = 0.0;  // meaningful for the learned policy only
};

constexpr double kMinRatio = 0.01;

enum class SizePolicyKind { Fixed, Gaussian, Uniform, Beta, Learned };

// One decision rule for the neighborhood size. Fixed ratios and the three
// parametric samplers cover the ablation grid; Learned delegates to the GNN
// actor.
struct SizePolicySpec {
  SizePolicyKind kind = SizePolicyKind::Fixed;
  double a = 0.5;  // fixed ratio / mean / low / alpha
  double b = 0.2;  // stddev / high / beta
  std::shared_ptr<const PolicyNet> model;  // required for Learned
  std::string checkpoint_path;             // provenance, for bench reports

  void validate() const;

  static SizePolicySpec fixed(double ratio);
  static SizePolicySpec gaussian(double mean = 0.5, double stddev = 0.2);
  static SizePolicySpec uniform(double lo = 0.01, double hi = 0.99);
  static SizePolicySpec beta(double alpha = 2.0, double beta = 2.0);
  static SizePolicySpec learned(std::shared_ptr<const PolicyNet> model,
                                std::string checkpoint = "");

  std::string describe() const;
};

// Clamp a raw ratio into the action range and integerize (round half up).
SizeDecision make_size_decision(double ratio, std::int32_t n);

// Decide the neighborhood size. The learned kind requires a state graph;
// the others ignore it. Deterministic in (spec, seed, state).
SizeDecision decide_size(const SizePolicySpec& spec, const BipartiteGraph* state, std::int32_t n,
                         std::uint64_t seed);

}  // namespace hyplns
