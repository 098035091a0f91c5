#include "mrlsp/baselines.hpp"

#include <algorithm>

#include "mrlsp/distance.hpp"

namespace mrlsp {

namespace {

// Assignment matrix -> collective action; unmatched robots take their
// row-minimum entry (ties by ascending column).
CollectiveAction action_from_assignment(const std::vector<SubgoalId>& ids,
                                        const std::vector<std::vector<double>>& matrix,
                                        const std::vector<int>& assigned) {
  CollectiveAction act;
  act.assignment.resize(matrix.size());
  for (size_t i = 0; i < matrix.size(); ++i) {
    int col = assigned[i];
    if (col < 0) {
      double best = kUnreachable;
      col = 0;
      for (size_t j = 0; j < ids.size(); ++j)
        if (matrix[i][j] < best) {
          best = matrix[i][j];
          col = static_cast<int>(j);
        }
    }
    act.assignment[i] = ids[col];
  }
  return act;
}

}  // namespace

CollectiveAction optimistic_plan(const AbstractBelief& belief, const DistanceModel& model) {
  const std::vector<SubgoalId> ids = belief.candidate_ids();
  if (ids.empty()) throw NoActionError("optimistic_plan: no subgoals");

  std::vector<std::vector<double>> matrix(belief.n_robots(),
                                          std::vector<double>(ids.size()));
  for (int i = 0; i < belief.n_robots(); ++i)
    for (size_t j = 0; j < ids.size(); ++j)
      matrix[i][j] =
          belief_distance(model, belief, i, ids[j]) + model.to_goal_optimistic(ids[j]);

  return action_from_assignment(ids, matrix, hungarian(matrix));
}

CollectiveAction lsa_lsp_plan(const AbstractBelief& belief, const PropertyMap& props,
                              const DistanceModel& model) {
  if (belief.unexplored.empty()) throw NoActionError("lsa_lsp_plan: no subgoals");
  const std::vector<std::vector<double>> matrix =
      lsp_constrained_matrix(belief, props, model);
  return action_from_assignment(belief.unexplored, matrix, hungarian(matrix));
}

std::vector<std::vector<int>> known_space_plan(const KnownEnvironment& env,
                                               const std::vector<Pose>& poses) {
  const int goal_cell = env.grid.cell_of(env.goal);
  const DistanceField f = dijkstra_field(env.grid, {goal_cell}, UnknownPolicy::Occupied);

  int winner = -1;
  double best = kUnreachable;
  for (size_t i = 0; i < poses.size(); ++i) {
    const double d = f.at(env.grid.cell_of(poses[i]));
    if (d < best) {
      best = d;
      winner = static_cast<int>(i);
    }
  }
  if (winner < 0) throw std::invalid_argument("known_space_plan: goal unreachable");

  std::vector<std::vector<int>> out(poses.size());
  const auto path = astar_path(env.grid, poses[winner], env.goal, UnknownPolicy::Occupied);
  out[winner] = *path;
  return out;
}

}  // namespace mrlsp
