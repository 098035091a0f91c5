#include "mrlsp/sensing.hpp"

#include <algorithm>
#include <cmath>

namespace mrlsp {

std::vector<int> segment_cells(const OccupancyGrid& grid, const Pose& a, const Pose& b) {
  const double res = grid.resolution;
  int x = grid.x_of(grid.cell_of(a)), y = grid.y_of(grid.cell_of(a));
  const int xe = grid.x_of(grid.cell_of(b)), ye = grid.y_of(grid.cell_of(b));

  std::vector<int> out;
  out.push_back(grid.index(x, y));
  if (x == xe && y == ye) return out;

  const double dx = b.x - a.x, dy = b.y - a.y;
  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);

  // Parametric distance to the next vertical/horizontal cell boundary.
  const double inf = std::numeric_limits<double>::infinity();
  double t_max_x = inf, t_delta_x = inf;
  double t_max_y = inf, t_delta_y = inf;
  if (step_x != 0) {
    const double next_bx = (step_x > 0 ? (x + 1) : x) * res;
    t_max_x = (next_bx - a.x) / dx;
    t_delta_x = res / std::abs(dx);
  }
  if (step_y != 0) {
    const double next_by = (step_y > 0 ? (y + 1) : y) * res;
    t_max_y = (next_by - a.y) / dy;
    t_delta_y = res / std::abs(dy);
  }

  const double tie_eps = 1e-12;
  const int guard = 4 * (grid.width + grid.height) + 8;
  for (int it = 0; it < guard; ++it) {
    if (std::abs(t_max_x - t_max_y) <= tie_eps) {
      // corner crossing: step diagonally
      x += step_x;
      y += step_y;
      t_max_x += t_delta_x;
      t_max_y += t_delta_y;
    } else if (t_max_x < t_max_y) {
      x += step_x;
      t_max_x += t_delta_x;
    } else {
      y += step_y;
      t_max_y += t_delta_y;
    }
    if (!grid.in_bounds(x, y)) break;
    out.push_back(grid.index(x, y));
    if (x == xe && y == ye) break;
  }
  return out;
}

bool visible(const OccupancyGrid& grid, const Pose& from, int target_idx) {
  const std::vector<int> path = segment_cells(grid, from, grid.center(target_idx));
  for (const int c : path) {
    if (c == target_idx) return true;
    if (grid.cells[c] == CellState::Occupied) return false;
  }
  // traversal ended without reaching the target (left the grid)
  return false;
}

Observation raycast_sense(const KnownEnvironment& env, const Pose& pose,
                          double range_m, int n_rays) {
  const OccupancyGrid& g = env.grid;
  if (range_m <= 0.0) throw std::invalid_argument("raycast_sense: range must be > 0");
  if (n_rays < 8) throw std::invalid_argument("raycast_sense: need at least 8 rays");
  if (pose.x < 0 || pose.y < 0 || pose.x > g.width * g.resolution ||
      pose.y > g.height * g.resolution)
    throw InvalidPoseError("raycast_sense: pose outside grid");
  const int pose_cell = g.cell_of(pose);
  if (g.cells[pose_cell] != CellState::Free)
    throw InvalidPoseError("raycast_sense: pose not on a Free cell");

  Observation obs;
  obs.origin = pose;

  const double two_pi = 6.283185307179586;
  const double ray_spacing = two_pi / n_rays;
  const int r_cells = static_cast<int>(std::ceil(range_m / g.resolution)) + 1;
  const int px = g.x_of(pose_cell), py = g.y_of(pose_cell);

  for (int y = std::max(0, py - r_cells); y <= std::min(g.height - 1, py + r_cells); ++y) {
    for (int x = std::max(0, px - r_cells); x <= std::min(g.width - 1, px + r_cells); ++x) {
      const int idx = g.index(x, y);
      const Pose c = g.center(idx);
      const double d = distance(pose, c);
      if (d > range_m) continue;
      if (idx != pose_cell) {
        // angular footprint of the cell seen from the sensor vs ray spacing
        const double half_width = std::atan2(0.5 * g.resolution, d);
        const double bearing = std::atan2(c.y - pose.y, c.x - pose.x);
        const double k = std::round(bearing / ray_spacing);
        const double off = std::abs(bearing - k * ray_spacing);
        if (off > half_width) continue;
        if (!visible(g, pose, idx)) continue;
      }
      obs.revealed.push_back({idx, g.cells[idx], g.semantic[idx]});
    }
  }
  return obs;
}

PartialMap integrate(const PartialMap& map, const Observation& obs) {
  PartialMap out = map;
  for (const Observation::Reveal& r : obs.revealed) {
    if (r.index < 0 || r.index >= map.size())
      throw std::invalid_argument("integrate: revealed cell out of bounds");
    const CellState prev = out.cells[r.index];
    if (prev != CellState::Unknown) {
      if (prev != r.state || out.semantic[r.index] != r.tag)
        throw ConsistencyFault("integrate: contradictory revelation at cell " +
                               std::to_string(r.index));
      continue;
    }
    out.cells[r.index] = r.state;
    out.semantic[r.index] = r.tag;
  }
  return out;
}

}  // namespace mrlsp
