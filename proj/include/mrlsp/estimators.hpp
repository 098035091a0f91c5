#pragma once

#include <unordered_map>

#include "mrlsp/frontiers.hpp"
#include "mrlsp/grid.hpp"

namespace mrlsp {

// Subgoal statistics consumed by the planners: probability the region beyond
// the frontier reaches the goal, expected distance to the goal on success,
// and expected enter-and-return distance on failure.
struct SubgoalProperties {
  double p_success = 0.0;
  double success_cost = 0.0;      // R_S, meters
  double exploration_cost = 0.0;  // R_E, meters
};

using PropertyMap = std::unordered_map<SubgoalId, SubgoalProperties>;

struct NoiseParams {
  double p_flip = 0.0;           // in [0, 0.5)
  double cost_sigma_frac = 0.0;  // >= 0, sigma of the log-normal cost factor
};

// Exact properties from the hidden map. p_success is exactly 0 or 1. The
// unexplored region U is every env-traversable cell not yet Free in the map,
// reached from the subgoal centroid without crossing map-Free cells other
// than the subgoal's own cells. On success the success cost is the geodesic
// centroid-to-goal distance inside that region; the exploration cost is the
// enter-and-turn-back bound 2 * max geodesic depth (1 * when re_one_way).
// Whichever field the outcome leaves unused still carries the depth bound.
SubgoalProperties oracle_properties(const KnownEnvironment& env, const PartialMap& map,
                                    const Subgoal& subgoal, const Pose& goal,
                                    bool re_one_way = false);

// Perturbed oracle output emulating an imperfect learned estimator. The
// binary success label flips with probability p_flip, then is smoothed to
// {0.05, 0.95}; each cost is scaled by exp(sigma * z). Deterministic per
// (seed, subgoal id).
SubgoalProperties noisy_properties(const SubgoalProperties& oracle, const NoiseParams& noise,
                                   uint64_t seed, SubgoalId subgoal_id);

// Rule-based estimate from semantic tags touching the frontier:
// MarkedPath -> 0.8, Hallway -> 0.5, Room -> 0.15, otherwise 0.3. Costs come
// from the optimistic centroid-to-goal distance.
SubgoalProperties semantic_properties(const PartialMap& map, const Subgoal& subgoal,
                                      const Pose& goal, double beta = 0.5);

enum class EstimatorKind : uint8_t { Oracle, Noisy, Semantic };

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::Oracle;
  NoiseParams noise;
  bool re_one_way = false;
  double semantic_beta = 0.5;
  uint64_t seed = 0;
};

// Properties for every given subgoal under one estimator configuration. The
// planners consume the resulting map and never see the estimator kind.
PropertyMap estimate_properties(const EstimatorConfig& cfg, const KnownEnvironment& env,
                                const PartialMap& map, const std::vector<Subgoal>& subgoals,
                                const Pose& goal);

}  // namespace mrlsp
