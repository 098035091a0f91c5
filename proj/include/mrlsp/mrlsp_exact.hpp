#pragma once

#include "mrlsp/belief.hpp"

namespace mrlsp {

// Expected team cost of a collective action by full expansion of the
// abstract recursion: Q = D' + P_S(sigma') * T_S + (1 - P_S(sigma')) *
// min over next actions of Q(b_F, .). Success states are terminal and
// evaluated by success_terminal_cost; the failure chain bottoms out at an
// empty unexplored set with the fail penalty, or at depth_limit with the
// optimistic team bound. Intended for small instances (|S_u| <= 4, N <= 3);
// the belief's goal-leading set must be empty.
double mrlsp_cost_exact(const AbstractBelief& belief, const CollectiveAction& action,
                        const DistanceModel& model, const PropertyMap& props,
                        int depth_limit = 8);

// Argmin action under mrlsp_cost_exact, ties by ascending assignment.
std::pair<CollectiveAction, double> mrlsp_plan_exact(const AbstractBelief& belief,
                                                     const DistanceModel& model,
                                                     const PropertyMap& props,
                                                     int depth_limit = 8);

}  // namespace mrlsp
