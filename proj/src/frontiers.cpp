#include "mrlsp/frontiers.hpp"

#include <algorithm>
#include <cmath>

namespace mrlsp {

namespace {

uint64_t fnv1a64(const std::vector<int>& cells) {
  uint64_t h = 1469598103934665603ULL;
  for (const int c : cells) {
    uint32_t v = static_cast<uint32_t>(c);
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

bool is_frontier_cell(const PartialMap& map, int x, int y) {
  if (map.at(x, y) != CellState::Free) return false;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const int nx = x + dx, ny = y + dy;
      if (map.in_bounds(nx, ny) && map.at(nx, ny) == CellState::Unknown) return true;
    }
  return false;
}

int medoid(const PartialMap& map, const std::vector<int>& cells) {
  int best = cells.front();
  double best_sum = std::numeric_limits<double>::infinity();
  for (const int a : cells) {
    const Pose pa = map.center(a);
    double sum = 0.0;
    for (const int b : cells) sum += distance(pa, map.center(b));
    if (sum < best_sum) {
      best_sum = sum;
      best = a;
    }
  }
  return best;
}

}  // namespace

std::vector<Subgoal> extract_subgoals(const PartialMap& map) {
  if (map.size() == 0) throw std::invalid_argument("extract_subgoals: empty map");
  std::vector<uint8_t> frontier(map.size(), 0);
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x)
      frontier[map.index(x, y)] = is_frontier_cell(map, x, y);

  std::vector<Subgoal> out;
  std::vector<uint8_t> seen(map.size(), 0);
  std::vector<int> stack;
  for (int start = 0; start < map.size(); ++start) {
    if (!frontier[start] || seen[start]) continue;
    Subgoal sg;
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      sg.cells.push_back(c);
      const int x = map.x_of(c), y = map.y_of(c);
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int nx = x + dx, ny = y + dy;
          if (!map.in_bounds(nx, ny)) continue;
          const int n = map.index(nx, ny);
          if (frontier[n] && !seen[n]) {
            seen[n] = 1;
            stack.push_back(n);
          }
        }
    }
    std::sort(sg.cells.begin(), sg.cells.end());
    sg.id = fnv1a64(sg.cells);
    sg.centroid = medoid(map, sg.cells);
    out.push_back(std::move(sg));
  }
  std::sort(out.begin(), out.end(),
            [](const Subgoal& a, const Subgoal& b) { return a.id < b.id; });
  return out;
}

int DistanceModel::index_of(SubgoalId id) const {
  const auto it = index.find(id);
  if (it == index.end())
    throw std::invalid_argument("DistanceModel: unknown subgoal id");
  return it->second;
}

DistanceModel build_distance_model(const PartialMap& map, const std::vector<Pose>& robot_poses,
                                   const std::vector<Subgoal>& subgoals, const Pose& goal) {
  DistanceModel m;
  for (const Subgoal& s : subgoals) m.ids.push_back(s.id);
  std::sort(m.ids.begin(), m.ids.end());
  const int n = static_cast<int>(m.ids.size());
  std::vector<int> centroids(n, -1);
  for (const Subgoal& s : subgoals) {
    const int pos = static_cast<int>(std::lower_bound(m.ids.begin(), m.ids.end(), s.id) -
                                     m.ids.begin());
    m.index[s.id] = pos;
    m.centroid_cell[s.id] = s.centroid;
    centroids[pos] = s.centroid;
  }

  m.robot_to_subgoal.resize(robot_poses.size());
  for (size_t i = 0; i < robot_poses.size(); ++i) {
    const int cell = map.cell_of(robot_poses[i]);
    if (map.cells[cell] != CellState::Free)
      throw std::invalid_argument("build_distance_model: robot pose not on a Free cell");
    const DistanceField f = dijkstra_field(map, {cell}, UnknownPolicy::Occupied);
    m.robot_to_subgoal[i].resize(n);
    for (int j = 0; j < n; ++j) m.robot_to_subgoal[i][j] = f.at(centroids[j]);
  }

  m.subgoal_to_subgoal.assign(n, std::vector<double>(n, kUnreachable));
  for (int j = 0; j < n; ++j) {
    const DistanceField f = dijkstra_field(map, {centroids[j]}, UnknownPolicy::Occupied);
    for (int k = 0; k < n; ++k) m.subgoal_to_subgoal[j][k] = f.at(centroids[k]);
  }

  m.subgoal_to_goal_optimistic.assign(n, kUnreachable);
  if (n > 0) {
    const DistanceField f = dijkstra_field(map, {map.cell_of(goal)}, UnknownPolicy::Free);
    for (int j = 0; j < n; ++j) m.subgoal_to_goal_optimistic[j] = f.at(centroids[j]);
  }
  return m;
}

std::vector<Subgoal> select_top_k(const std::vector<Subgoal>& subgoals, int k,
                                  const DistanceModel& model) {
  if (k < 1) throw std::invalid_argument("select_top_k: k must be >= 1");
  if (static_cast<int>(subgoals.size()) <= k) return subgoals;

  std::vector<std::pair<double, SubgoalId>> scored;
  for (const Subgoal& s : subgoals) {
    double nearest = kUnreachable;
    const int j = model.index_of(s.id);
    for (int i = 0; i < model.n_robots(); ++i)
      nearest = std::min(nearest, model.robot_to_subgoal[i][j]);
    scored.emplace_back(nearest + model.subgoal_to_goal_optimistic[j], s.id);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<SubgoalId> keep;
  for (int i = 0; i < k; ++i) keep.push_back(scored[i].second);
  std::sort(keep.begin(), keep.end());

  std::vector<Subgoal> out;
  for (const Subgoal& s : subgoals)
    if (std::binary_search(keep.begin(), keep.end(), s.id)) out.push_back(s);
  return out;
}

}  // namespace mrlsp
