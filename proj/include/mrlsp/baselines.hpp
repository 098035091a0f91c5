#pragma once

#include "mrlsp/assignment.hpp"
#include "mrlsp/belief.hpp"
#include "mrlsp/lsp.hpp"

namespace mrlsp {

// Non-learned baseline: treat unseen space as free, cost each (robot,
// subgoal) pair by D(q_i, s) + optimistic s-to-goal distance, and split the
// team with the assignment solver. Surplus robots take their row-minimum
// subgoal.
CollectiveAction optimistic_plan(const AbstractBelief& belief, const DistanceModel& model);

// Learning-informed baseline: each matrix entry is the single-robot expected
// cost when robot i is constrained to explore subgoal j first; the
// assignment solver enforces distinct subgoals.
CollectiveAction lsa_lsp_plan(const AbstractBelief& belief, const PropertyMap& props,
                              const DistanceModel& model);

// Lower-bound planner on the fully known map: the robot closest to the goal
// follows its shortest path, the rest hold position. Returns one cell path
// per robot (empty = hold).
std::vector<std::vector<int>> known_space_plan(const KnownEnvironment& env,
                                               const std::vector<Pose>& poses);

}  // namespace mrlsp
