#pragma once

#include "mrlsp/grid.hpp"

namespace mrlsp {

struct InvalidPoseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Revealed state contradicts what the map already holds; sensing is noiseless
// so this signals a bug upstream.
struct ConsistencyFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cells crossed by the open segment a->b, in order. Exact voxel traversal;
// when the segment passes through a lattice corner it steps diagonally, so
// cells merely touched at a corner are not included.
std::vector<int> segment_cells(const OccupancyGrid& grid, const Pose& a, const Pose& b);

// True when the segment from `from` to the center of `target_idx` crosses no
// Occupied cell interior (the target cell itself may be Occupied).
bool visible(const OccupancyGrid& grid, const Pose& from, int target_idx);

// Deterministic, noiseless ray-cast sensing on cell centers: a cell is
// revealed when its center lies within range_m, its bearing falls inside the
// angular footprint of one of the n_rays evenly spaced rays, and the segment
// from the sensor to its center is unobstructed.
Observation raycast_sense(const KnownEnvironment& env, const Pose& pose,
                          double range_m, int n_rays);

// Copies the revealed states and tags into a new map. Re-revealing a known
// cell with the same value is a no-op; a differing value throws
// ConsistencyFault.
PartialMap integrate(const PartialMap& map, const Observation& obs);

}  // namespace mrlsp
