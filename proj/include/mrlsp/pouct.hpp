#pragma once

#include "mrlsp/belief.hpp"

namespace mrlsp {

struct PouctParams {
  int n_samples = 15000;  // rollouts per planning step
  double c_explore = 1.0;
  int depth_limit = 5;  // abstract transitions before the optimistic leaf bound
  uint64_t seed = 0;
};

struct PouctResult {
  CollectiveAction action;
  double root_value = 0.0;  // mean cost of the returned root action
  int root_visits = 0;
  int samples_run = 0;
};

// Anytime sample-based evaluation of the collective-action recursion.
// Each rollout descends the failure chain: at a node the action with the
// lowest (mean cost - c_explore * sqrt(ln(total)/n_a)) is taken (unvisited
// actions first, deterministic order), the outcome is drawn from
// Bernoulli(P_S(sigma')); successes terminate with the success terminal
// cost, failure leaves are valued by accrued cost plus the optimistic team
// bound. Returns the root action with the lowest mean cost, ties broken by
// most visits, then ascending assignment.
PouctResult pouct_search(const AbstractBelief& belief, const PropertyMap& props,
                         const DistanceModel& model, const PouctParams& params);

CollectiveAction pouct_plan(const AbstractBelief& belief, const PropertyMap& props,
                            const DistanceModel& model, int n_samples, double c_explore,
                            int depth_limit, uint64_t seed);

}  // namespace mrlsp
