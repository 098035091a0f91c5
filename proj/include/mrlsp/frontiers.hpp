#pragma once

#include <unordered_map>

#include "mrlsp/distance.hpp"
#include "mrlsp/grid.hpp"

namespace mrlsp {

using SubgoalId = uint64_t;

// A frontier region: one 8-connected component of Free cells that touch
// Unknown space. Identity is content-addressed from the sorted member cells,
// so an unchanged frontier keeps its id across planning steps.
struct Subgoal {
  SubgoalId id = 0;
  std::vector<int> cells;  // sorted member cell indices
  int centroid = -1;       // medoid member cell
};

// All frontier components of the map, sorted by ascending id. Empty when the
// map has no frontier.
std::vector<Subgoal> extract_subgoals(const PartialMap& map);

// Distance tables the planners consume. Known-space entries are computed with
// Unknown treated as Occupied; the subgoal-to-goal column is optimistic
// (Unknown treated as Free). Unreachable entries are kUnreachable.
struct DistanceModel {
  std::vector<SubgoalId> ids;  // ascending
  std::unordered_map<SubgoalId, int> index;
  std::unordered_map<SubgoalId, int> centroid_cell;
  std::vector<std::vector<double>> robot_to_subgoal;     // [robot][subgoal]
  std::vector<std::vector<double>> subgoal_to_subgoal;   // [subgoal][subgoal]
  std::vector<double> subgoal_to_goal_optimistic;        // [subgoal]

  int n_subgoals() const { return static_cast<int>(ids.size()); }
  int n_robots() const { return static_cast<int>(robot_to_subgoal.size()); }
  int index_of(SubgoalId id) const;
  double robot_to(int robot, SubgoalId id) const { return robot_to_subgoal[robot][index_of(id)]; }
  double between(SubgoalId a, SubgoalId b) const { return subgoal_to_subgoal[index_of(a)][index_of(b)]; }
  double to_goal_optimistic(SubgoalId id) const { return subgoal_to_goal_optimistic[index_of(id)]; }
};

DistanceModel build_distance_model(const PartialMap& map, const std::vector<Pose>& robot_poses,
                                   const std::vector<Subgoal>& subgoals, const Pose& goal);

// The k most promising subgoals by optimistic through-cost
// min_i robot_to_subgoal[i][s] + subgoal_to_goal_optimistic[s],
// ties by ascending id. Returns all when fewer than k exist; the result is
// ordered by ascending id.
std::vector<Subgoal> select_top_k(const std::vector<Subgoal>& subgoals, int k,
                                  const DistanceModel& model);

}  // namespace mrlsp
