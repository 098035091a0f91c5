#include "mrlsp/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace mrlsp {

namespace {

constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

struct HeapEntry {
  double d;
  int idx;
  bool operator>(const HeapEntry& o) const {
    return d > o.d || (d == o.d && idx > o.idx);
  }
};

}  // namespace

std::vector<uint8_t> traversable_mask(const OccupancyGrid& grid, UnknownPolicy policy) {
  std::vector<uint8_t> mask(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const CellState s = grid.cells[i];
    mask[i] = (s == CellState::Free) ||
              (s == CellState::Unknown && policy == UnknownPolicy::Free);
  }
  return mask;
}

DistanceField dijkstra_masked(int width, int height, double resolution,
                              const std::vector<uint8_t>& traversable,
                              const std::vector<int>& sources) {
  if (sources.empty()) throw std::invalid_argument("dijkstra: no sources");
  DistanceField f;
  f.width = width;
  f.height = height;
  f.resolution = resolution;
  f.d.assign(static_cast<size_t>(width) * height, kUnreachable);

  const double straight = resolution;
  const double diagonal = resolution * std::numbers::sqrt2;

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
  for (const int s : sources) {
    if (s < 0 || s >= width * height || !traversable[s])
      throw std::invalid_argument("dijkstra: source not traversable");
    f.d[s] = 0.0;
    heap.push({0.0, s});
  }

  while (!heap.empty()) {
    const auto [d, idx] = heap.top();
    heap.pop();
    if (d > f.d[idx]) continue;
    const int x = idx % width, y = idx / width;
    for (int k = 0; k < 8; ++k) {
      const int nx = x + kDx[k], ny = y + kDy[k];
      if (nx < 0 || nx >= width || ny < 0 || ny >= height) continue;
      const int nidx = ny * width + nx;
      if (!traversable[nidx]) continue;
      double step = straight;
      if (k >= 4) {
        // no squeezing through a blocked corner pair
        const bool orth_a = traversable[y * width + nx];
        const bool orth_b = traversable[ny * width + x];
        if (!orth_a && !orth_b) continue;
        step = diagonal;
      }
      const double nd = d + step;
      if (nd < f.d[nidx]) {
        f.d[nidx] = nd;
        heap.push({nd, nidx});
      }
    }
  }
  return f;
}

DistanceField dijkstra_field(const OccupancyGrid& grid, const std::vector<int>& sources,
                             UnknownPolicy policy) {
  return dijkstra_masked(grid.width, grid.height, grid.resolution,
                         traversable_mask(grid, policy), sources);
}

std::optional<std::vector<int>> astar_path(const OccupancyGrid& grid, const Pose& start,
                                           const Pose& goal, UnknownPolicy policy) {
  const std::vector<uint8_t> mask = traversable_mask(grid, policy);
  const int w = grid.width, h = grid.height;
  const int s = grid.cell_of(start), g = grid.cell_of(goal);
  if (!mask[s]) throw std::invalid_argument("astar: start cell not traversable");
  if (!mask[g]) return std::nullopt;

  const double straight = grid.resolution;
  const double diagonal = grid.resolution * std::numbers::sqrt2;
  const int gx = g % w, gy = g / w;
  auto heuristic = [&](int idx) {
    const double dx = std::abs(idx % w - gx), dy = std::abs(idx / w - gy);
    return diagonal * std::min(dx, dy) + straight * std::abs(dx - dy);
  };

  std::vector<double> dist(static_cast<size_t>(w) * h, kUnreachable);
  std::vector<int> parent(static_cast<size_t>(w) * h, -1);
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
  dist[s] = 0.0;
  heap.push({heuristic(s), s});

  while (!heap.empty()) {
    const auto [fd, idx] = heap.top();
    heap.pop();
    if (fd > dist[idx] + heuristic(idx) + 1e-12) continue;
    if (idx == g) break;
    const int x = idx % w, y = idx / w;
    for (int k = 0; k < 8; ++k) {
      const int nx = x + kDx[k], ny = y + kDy[k];
      if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
      const int nidx = ny * w + nx;
      if (!mask[nidx]) continue;
      double step = straight;
      if (k >= 4) {
        if (!mask[y * w + nx] && !mask[ny * w + x]) continue;
        step = diagonal;
      }
      const double nd = dist[idx] + step;
      if (nd < dist[nidx] - 1e-15) {
        dist[nidx] = nd;
        parent[nidx] = idx;
        heap.push({nd + heuristic(nidx), nidx});
      }
    }
  }

  if (dist[g] == kUnreachable) return std::nullopt;
  std::vector<int> path;
  for (int c = g; c != -1; c = parent[c]) path.push_back(c);
  std::reverse(path.begin(), path.end());
  return path;
}

double path_cost(const OccupancyGrid& grid, const std::vector<int>& path) {
  double cost = 0.0;
  for (size_t i = 1; i < path.size(); ++i) {
    const int dx = std::abs(grid.x_of(path[i]) - grid.x_of(path[i - 1]));
    const int dy = std::abs(grid.y_of(path[i]) - grid.y_of(path[i - 1]));
    if (dx > 1 || dy > 1) throw std::invalid_argument("path_cost: cells not adjacent");
    cost += (dx + dy == 2) ? grid.resolution * std::numbers::sqrt2 : grid.resolution;
  }
  return cost;
}

}  // namespace mrlsp
