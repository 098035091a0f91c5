#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrlsp {

enum class CellState : uint8_t { Free, Occupied, Unknown };

enum class SemanticTag : uint8_t { None, MarkedPath, Hallway, Room, Clutter };

// Continuous position in meters within grid bounds.
struct Pose {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Pose& a, const Pose& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// Row-major 2D cell lattice. A fully observed grid has no Unknown cells; a
// partial map starts all-Unknown and is grown by integrating observations.
struct OccupancyGrid {
  int width = 0;
  int height = 0;
  double resolution = 0.5;  // meters per cell, > 0
  std::vector<CellState> cells;
  std::vector<SemanticTag> semantic;

  static OccupancyGrid filled(int w, int h, double res, CellState s);

  int size() const { return width * height; }
  int index(int x, int y) const { return y * width + x; }
  int x_of(int idx) const { return idx % width; }
  int y_of(int idx) const { return idx / width; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  CellState at(int x, int y) const { return cells[index(x, y)]; }
  SemanticTag tag_at(int x, int y) const { return semantic[index(x, y)]; }

  // Enclosing cell of a pose; poses must lie within the grid extent.
  int cell_of(const Pose& p) const;
  Pose center(int idx) const {
    return Pose{(x_of(idx) + 0.5) * resolution, (y_of(idx) + 0.5) * resolution};
  }

  bool same_shape(const OccupancyGrid& o) const {
    return width == o.width && height == o.height && resolution == o.resolution;
  }
};

using PartialMap = OccupancyGrid;

// All-Unknown map with the same shape as the given grid.
PartialMap unknown_map_like(const OccupancyGrid& grid);

// Fully known world with goal and robot start poses.
struct KnownEnvironment {
  OccupancyGrid grid;
  Pose goal;
  std::vector<Pose> starts;
  uint64_t seed = 0;
};

struct Observation {
  struct Reveal {
    int index;
    CellState state;
    SemanticTag tag;
  };
  Pose origin;
  std::vector<Reveal> revealed;
};

// Environment text format. Header line "width height resolution_m", then one
// row per line, one char per cell:
//   '#' Occupied          '.' Free
//   'G' goal (Free)       '1'..'9' robot starts (Free)
//   'P' Free+MarkedPath   'H' Free+Hallway   'r' Free+Room
//   'c' Occupied+Clutter
// Goal and start markers override the semantic tag of their cell.
std::string serialize_environment(const KnownEnvironment& env);
KnownEnvironment parse_environment(const std::string& text);
KnownEnvironment load_environment(const std::string& path);
void save_environment(const KnownEnvironment& env, const std::string& path);

}  // namespace mrlsp
