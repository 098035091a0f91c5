#pragma once

#include <optional>

#include "mrlsp/estimators.hpp"
#include "mrlsp/frontiers.hpp"

namespace mrlsp {

struct NoActionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnreachableAssignmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sentinel cost for a belief whose subgoals are exhausted without success;
// within the abstraction the goal must lie beyond some subgoal, so reaching
// this marks a model inconsistency rather than a plan.
constexpr double kFailPenalty = 1e5;

// In-tree robot state. A robot is anchored at its physical pose (nullopt) or
// at a subgoal centroid after a failed exploration, and may have progressed
// some meters from the anchor toward a target subgoal.
struct RobotState {
  std::optional<SubgoalId> anchor;  // nullopt = physical start pose
  std::optional<SubgoalId> target;
  double progress = 0.0;  // meters, >= 0
};

// Abstract belief <map, S_u, S_g, q>: the subgoals not yet explored, those
// known to lead to the goal, and the per-robot states.
struct AbstractBelief {
  uint64_t map_ref = 0;
  std::vector<SubgoalId> unexplored;    // S_u, ascending
  std::vector<SubgoalId> goal_leading;  // S_g, ascending
  std::vector<RobotState> robots;

  int n_robots() const { return static_cast<int>(robots.size()); }
  std::vector<SubgoalId> candidate_ids() const;  // S_u union S_g, ascending
};

AbstractBelief make_root_belief(std::vector<SubgoalId> unexplored, int n_robots,
                                uint64_t map_ref = 0);

// One subgoal per robot, executed concurrently.
struct CollectiveAction {
  std::vector<SubgoalId> assignment;

  bool operator==(const CollectiveAction& o) const = default;
  bool operator<(const CollectiveAction& o) const { return assignment < o.assignment; }
};

// The subgoal whose exploration resolves first under concurrent execution,
// the elapsed team distance at that moment, and the robot that resolves it.
struct FirstOutcome {
  SubgoalId sigma_prime = 0;
  double d_prime = 0.0;
  int robot = -1;
};

enum class Outcome : uint8_t { Success, Failure };

// Path-progress distance surrogate: distance from robot i's in-tree state to
// subgoal sigma using the precomputed tables (backtrack vs continue through
// the current target).
double belief_distance(const DistanceModel& model, const AbstractBelief& belief,
                       int robot, SubgoalId sigma);

// All collective actions for the belief: injective assignments over
// S_u union S_g; when subgoals are scarcer than robots, surplus robots
// duplicate their individually nearest subgoal. Deterministic ascending
// order. Throws NoActionError when no subgoal exists.
std::vector<CollectiveAction> enumerate_actions(const AbstractBelief& belief,
                                                const DistanceModel& model);

FirstOutcome first_outcome(const AbstractBelief& belief, const CollectiveAction& action,
                           const DistanceModel& model, const PropertyMap& props);

// Belief update of the success/failure abstract states: sigma' leaves S_u
// (joining S_g on success), every robot advances d' meters along its route,
// and on failure the resolving robot is re-anchored at sigma's centroid.
AbstractBelief transition(const AbstractBelief& belief, const CollectiveAction& action,
                          Outcome outcome, const FirstOutcome& first,
                          const DistanceModel& model);

// Remaining team cost once some subgoal is known to lead to the goal: the
// discovering robot finishes through sigma' for max(0, R_S - min(R_S, R_E));
// any robot may instead route through any goal-leading subgoal for
// D(q_i, s) + R_S(s).
double success_terminal_cost(const AbstractBelief& belief_s, const FirstOutcome& first,
                             const DistanceModel& model, const PropertyMap& props);

// Lower bound for the team to reach the goal if unseen space were free:
// min over robots and subgoals of D(q_i, s) + optimistic s-to-goal.
double optimistic_bound(const AbstractBelief& belief, const DistanceModel& model);

}  // namespace mrlsp
