#include "mrlsp/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "mrlsp/rng.hpp"

namespace mrlsp {

namespace {

bool frontier_cell(const PartialMap& map, int idx) {
  const int x = map.x_of(idx), y = map.y_of(idx);
  if (map.cells[idx] != CellState::Free) return false;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const int nx = x + dx, ny = y + dy;
      if (map.in_bounds(nx, ny) && map.at(nx, ny) == CellState::Unknown) return true;
    }
  return false;
}

}  // namespace

SubgoalProperties oracle_properties(const KnownEnvironment& env, const PartialMap& map,
                                    const Subgoal& subgoal, const Pose& goal,
                                    bool re_one_way) {
  if (!env.grid.same_shape(map))
    throw std::invalid_argument("oracle_properties: env and map shapes differ");
  for (const int c : subgoal.cells)
    if (!frontier_cell(map, c))
      throw std::invalid_argument("oracle_properties: subgoal is not on the map frontier");

  // traversable set: the unexplored region plus the subgoal's own cells
  std::vector<uint8_t> allowed(map.size(), 0);
  for (int i = 0; i < map.size(); ++i)
    allowed[i] = env.grid.cells[i] == CellState::Free && map.cells[i] != CellState::Free;
  for (const int c : subgoal.cells) allowed[c] = 1;

  const DistanceField f = dijkstra_masked(map.width, map.height, map.resolution,
                                          allowed, {subgoal.centroid});
  double max_depth = 0.0;
  for (int i = 0; i < map.size(); ++i)
    if (f.d[i] != kUnreachable) max_depth = std::max(max_depth, f.d[i]);

  const double depth_bound = (re_one_way ? 1.0 : 2.0) * max_depth;
  const int goal_cell = env.grid.cell_of(goal);

  SubgoalProperties p;
  if (f.d[goal_cell] != kUnreachable) {
    p.p_success = 1.0;
    p.success_cost = f.d[goal_cell];
    p.exploration_cost = depth_bound;
  } else {
    p.p_success = 0.0;
    p.success_cost = depth_bound;
    p.exploration_cost = depth_bound;
  }
  return p;
}

SubgoalProperties noisy_properties(const SubgoalProperties& oracle, const NoiseParams& noise,
                                   uint64_t seed, SubgoalId subgoal_id) {
  if (noise.p_flip < 0.0 || noise.p_flip >= 0.5)
    throw std::invalid_argument("noisy_properties: p_flip must be in [0, 0.5)");
  if (noise.cost_sigma_frac < 0.0)
    throw std::invalid_argument("noisy_properties: cost_sigma_frac must be >= 0");

  Rng rng(mix_seed(seed, subgoal_id));
  bool label = oracle.p_success >= 0.5;
  if (rng.bernoulli(noise.p_flip)) label = !label;
  const double z_s = rng.normal();
  const double z_e = rng.normal();

  SubgoalProperties out;
  out.p_success = std::abs((label ? 1.0 : 0.0) - 0.05);
  out.success_cost = oracle.success_cost * std::exp(noise.cost_sigma_frac * z_s);
  out.exploration_cost = oracle.exploration_cost * std::exp(noise.cost_sigma_frac * z_e);
  return out;
}

SubgoalProperties semantic_properties(const PartialMap& map, const Subgoal& subgoal,
                                      const Pose& goal, double beta) {
  bool marked = false, hallway = false, room = false;
  auto note = [&](int idx) {
    switch (map.semantic[idx]) {
      case SemanticTag::MarkedPath: marked = true; break;
      case SemanticTag::Hallway: hallway = true; break;
      case SemanticTag::Room: room = true; break;
      default: break;
    }
  };
  for (const int c : subgoal.cells) {
    note(c);
    const int x = map.x_of(c), y = map.y_of(c);
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx, ny = y + dy;
        if (map.in_bounds(nx, ny)) note(map.index(nx, ny));
      }
  }

  SubgoalProperties p;
  p.p_success = marked ? 0.8 : (hallway ? 0.5 : (room ? 0.15 : 0.3));
  const DistanceField f =
      dijkstra_field(map, {subgoal.centroid}, UnknownPolicy::Free);
  const double opt = f.at(map.cell_of(goal));
  p.success_cost = opt;
  p.exploration_cost = beta * opt;
  return p;
}

PropertyMap estimate_properties(const EstimatorConfig& cfg, const KnownEnvironment& env,
                                const PartialMap& map, const std::vector<Subgoal>& subgoals,
                                const Pose& goal) {
  PropertyMap out;
  if (cfg.kind == EstimatorKind::Semantic) {
    // one optimistic field from the goal serves every subgoal
    const DistanceField f = dijkstra_field(map, {map.cell_of(goal)}, UnknownPolicy::Free);
    for (const Subgoal& s : subgoals) {
      bool marked = false, hallway = false, room = false;
      auto note = [&](int idx) {
        switch (map.semantic[idx]) {
          case SemanticTag::MarkedPath: marked = true; break;
          case SemanticTag::Hallway: hallway = true; break;
          case SemanticTag::Room: room = true; break;
          default: break;
        }
      };
      for (const int c : s.cells) {
        note(c);
        const int x = map.x_of(c), y = map.y_of(c);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx, ny = y + dy;
            if (map.in_bounds(nx, ny)) note(map.index(nx, ny));
          }
      }
      SubgoalProperties p;
      p.p_success = marked ? 0.8 : (hallway ? 0.5 : (room ? 0.15 : 0.3));
      const double opt = f.at(s.centroid);
      p.success_cost = opt;
      p.exploration_cost = cfg.semantic_beta * opt;
      out[s.id] = p;
    }
    return out;
  }

  for (const Subgoal& s : subgoals) {
    SubgoalProperties p = oracle_properties(env, map, s, goal, cfg.re_one_way);
    if (cfg.kind == EstimatorKind::Noisy)
      p = noisy_properties(p, cfg.noise, cfg.seed, s.id);
    out[s.id] = p;
  }
  return out;
}

}  // namespace mrlsp
