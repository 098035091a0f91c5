#pragma once

#include "mrlsp/belief.hpp"

namespace mrlsp {

// Single-robot expected-cost recursion over subgoal orderings, with the
// exploration cost replaced by min(R_S, R_E) so that it coincides with the
// one-robot case of the multi-robot recursion. Returns the minimum expected
// cost and the argmin first subgoal (ties by ascending id). Requires a
// one-robot belief with 1..9 unexplored subgoals.
std::pair<double, SubgoalId> lsp_cost(const AbstractBelief& belief, const PropertyMap& props,
                                      const DistanceModel& model);

// Per-robot expected cost when robot i is constrained to explore subgoal j
// first and then continues single-robot optimally. Rows follow the belief's
// robots, columns the unexplored set in ascending id order. Used by the
// assignment-based baseline.
std::vector<std::vector<double>> lsp_constrained_matrix(const AbstractBelief& belief,
                                                        const PropertyMap& props,
                                                        const DistanceModel& model);

}  // namespace mrlsp
