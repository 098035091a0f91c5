#pragma once

#include "mrlsp/grid.hpp"

namespace mrlsp {

struct GenerationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EnvKind : uint8_t { Maze, Office, Generic };

// Guided maze: a perfect maze carved from a randomized spanning tree, with a
// marked trail through the team start whose two branches each fall in the
// given length range (in maze cells); exactly one branch ends at the goal.
struct MazeParams {
  int cells_per_side = 25;
  int corridor_width = 2;
  int branch_min = 60;  // marked branch length range, maze cells
  int branch_max = 115;
};

// Office floorplan: intersecting hallways flanked by rooms with single
// doorways (corner rooms may get a second doorway), clutter blocks inside
// rooms, goal in a room, start in a hallway.
struct OfficeParams {
  int min_hallways = 2;
  int max_hallways = 4;
  int min_rooms_per_hallway = 4;
  int max_rooms_per_hallway = 9;
  double clutter_density = 0.10;       // fraction of room interior cells
  double corner_room_probability = 0.4;
  int min_width = 110;  // grid cells
  int max_width = 150;
  int min_height = 80;
  int max_height = 110;
};

KnownEnvironment generate_maze(uint64_t seed, const MazeParams& params);
KnownEnvironment generate_office(uint64_t seed, const OfficeParams& params);

enum class ViolationCode : uint8_t {
  BadStartOrGoal,
  UnknownCells,
  BorderOpen,
  UnreachableGoal,
  SemanticInconsistent,
  NotSimplyConnected,
};

struct Violation {
  ViolationCode code;
  std::string detail;
};

// Structural checks: reachability from every start, closed border walls,
// semantic tag consistency, and (maze only) simple connectivity. Empty
// result = valid.
std::vector<Violation> validate_env(const KnownEnvironment& env,
                                    EnvKind kind = EnvKind::Generic);

}  // namespace mrlsp
