#pragma once

#include <limits>
#include <optional>

#include "mrlsp/grid.hpp"

namespace mrlsp {

// Traversability of Unknown cells for planning queries. Occupied cells are
// never traversable.
enum class UnknownPolicy : uint8_t { Free, Occupied };

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

// Per-cell geodesic distance in meters from a source set; kUnreachable where
// no path exists.
struct DistanceField {
  int width = 0;
  int height = 0;
  double resolution = 0.0;
  std::vector<double> d;

  double at(int idx) const { return d[idx]; }
  double at(int x, int y) const { return d[y * width + x]; }
};

std::vector<uint8_t> traversable_mask(const OccupancyGrid& grid, UnknownPolicy policy);

// 8-connected Dijkstra over an explicit traversability mask. Straight steps
// cost resolution, diagonal steps resolution*sqrt(2); a diagonal move is
// forbidden when both of its orthogonal neighbor cells are blocked.
DistanceField dijkstra_masked(int width, int height, double resolution,
                              const std::vector<uint8_t>& traversable,
                              const std::vector<int>& sources);

DistanceField dijkstra_field(const OccupancyGrid& grid, const std::vector<int>& sources,
                             UnknownPolicy policy);

// A* between poses on the same metric; returns the cell path (start cell
// first) or nullopt when unreachable. The returned path's cost equals the
// dijkstra_field distance between the endpoints.
std::optional<std::vector<int>> astar_path(const OccupancyGrid& grid, const Pose& start,
                                           const Pose& goal, UnknownPolicy policy);

// Sum of step costs along a cell path (cells must be 8-adjacent in sequence).
double path_cost(const OccupancyGrid& grid, const std::vector<int>& path);

}  // namespace mrlsp
