#include "mrlsp/environments.hpp"

#include <algorithm>
#include <queue>

#include "mrlsp/distance.hpp"
#include "mrlsp/rng.hpp"

namespace mrlsp {

namespace {

constexpr double kResolution = 0.5;

struct MazeLattice {
  int side;
  std::vector<int> parent;   // spanning-tree parent per maze cell, -1 at root
  std::vector<uint8_t> open_right, open_down;  // carved passages

  int idx(int i, int j) const { return j * side + i; }
};

MazeLattice spanning_tree_maze(int side, Rng& rng) {
  MazeLattice m;
  m.side = side;
  const int n = side * side;
  m.parent.assign(n, -1);
  m.open_right.assign(n, 0);
  m.open_down.assign(n, 0);

  std::vector<uint8_t> visited(n, 0);
  std::vector<int> stack;
  const int start = rng.uniform_int(0, n - 1);
  visited[start] = 1;
  stack.push_back(start);
  while (!stack.empty()) {
    const int cur = stack.back();
    const int ci = cur % side, cj = cur / side;
    std::vector<int> nbrs;
    if (ci + 1 < side && !visited[m.idx(ci + 1, cj)]) nbrs.push_back(m.idx(ci + 1, cj));
    if (ci - 1 >= 0 && !visited[m.idx(ci - 1, cj)]) nbrs.push_back(m.idx(ci - 1, cj));
    if (cj + 1 < side && !visited[m.idx(ci, cj + 1)]) nbrs.push_back(m.idx(ci, cj + 1));
    if (cj - 1 >= 0 && !visited[m.idx(ci, cj - 1)]) nbrs.push_back(m.idx(ci, cj - 1));
    if (nbrs.empty()) {
      stack.pop_back();
      continue;
    }
    const int next = nbrs[rng.uniform_int(0, static_cast<int>(nbrs.size()) - 1)];
    visited[next] = 1;
    m.parent[next] = cur;
    const int ni = next % side, nj = next / side;
    if (ni == ci + 1) m.open_right[cur] = 1;
    if (ni == ci - 1) m.open_right[next] = 1;
    if (nj == cj + 1) m.open_down[cur] = 1;
    if (nj == cj - 1) m.open_down[next] = 1;
    stack.push_back(next);
  }
  return m;
}

// unique tree path between two maze cells, via BFS parents
std::vector<int> tree_path(const MazeLattice& m, int from, int to) {
  const int n = m.side * m.side;
  std::vector<int> prev(n, -2);
  std::queue<int> q;
  q.push(from);
  prev[from] = -1;
  while (!q.empty()) {
    const int cur = q.front();
    q.pop();
    if (cur == to) break;
    const int ci = cur % m.side, cj = cur / m.side;
    auto push = [&](int nxt) {
      if (prev[nxt] == -2) {
        prev[nxt] = cur;
        q.push(nxt);
      }
    };
    if (ci + 1 < m.side && m.open_right[cur]) push(m.idx(ci + 1, cj));
    if (ci - 1 >= 0 && m.open_right[m.idx(ci - 1, cj)]) push(m.idx(ci - 1, cj));
    if (cj + 1 < m.side && m.open_down[cur]) push(m.idx(ci, cj + 1));
    if (cj - 1 >= 0 && m.open_down[m.idx(ci, cj - 1)]) push(m.idx(ci, cj - 1));
  }
  std::vector<int> path;
  for (int c = to; c != -1; c = prev[c]) path.push_back(c);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

KnownEnvironment generate_maze(uint64_t seed, const MazeParams& params) {
  if (params.cells_per_side < 3 || params.corridor_width < 1 ||
      params.branch_min < 2 || params.branch_max < params.branch_min)
    throw std::invalid_argument("generate_maze: bad parameters");

  Rng rng(mix_seed(seed, 0x6d617a65));  // "maze"
  const int side = params.cells_per_side;
  const int cw = params.corridor_width;
  const int pitch = cw + 1;
  const int dim = side * pitch + 1;

  for (int attempt = 0; attempt < 16; ++attempt) {
    const MazeLattice maze = spanning_tree_maze(side, rng);

    // pick trail endpoints whose midpoint splits into two in-range branches
    std::vector<int> path;
    for (int t = 0; t < 400 && path.empty(); ++t) {
      const int a = rng.uniform_int(0, side * side - 1);
      const int b = rng.uniform_int(0, side * side - 1);
      if (a == b) continue;
      std::vector<int> p = tree_path(maze, a, b);
      const int edges = static_cast<int>(p.size()) - 1;
      const int mid = edges / 2;
      if (mid >= params.branch_min && mid <= params.branch_max &&
          edges - mid >= params.branch_min && edges - mid <= params.branch_max)
        path = std::move(p);
    }
    if (path.empty()) continue;

    KnownEnvironment env;
    env.seed = seed;
    env.grid = OccupancyGrid::filled(dim, dim, kResolution, CellState::Occupied);

    auto carve_block = [&](int mi, int mj, SemanticTag tag) {
      for (int dy = 0; dy < cw; ++dy)
        for (int dx = 0; dx < cw; ++dx) {
          const int idx = env.grid.index(1 + mi * pitch + dx, 1 + mj * pitch + dy);
          env.grid.cells[idx] = CellState::Free;
          if (tag != SemanticTag::None) env.grid.semantic[idx] = tag;
        }
    };
    auto carve_passage = [&](int cell, bool right, SemanticTag tag) {
      const int mi = cell % side, mj = cell / side;
      for (int d = 0; d < cw; ++d) {
        const int x = right ? 1 + mi * pitch + cw : 1 + mi * pitch + d;
        const int y = right ? 1 + mj * pitch + d : 1 + mj * pitch + cw;
        const int idx = env.grid.index(x, y);
        env.grid.cells[idx] = CellState::Free;
        if (tag != SemanticTag::None) env.grid.semantic[idx] = tag;
      }
    };

    for (int j = 0; j < side; ++j)
      for (int i = 0; i < side; ++i) {
        carve_block(i, j, SemanticTag::None);
        const int c = maze.idx(i, j);
        if (maze.open_right[c]) carve_passage(c, true, SemanticTag::None);
        if (maze.open_down[c]) carve_passage(c, false, SemanticTag::None);
      }

    // marked trail along the path
    for (size_t k = 0; k < path.size(); ++k) {
      const int mi = path[k] % side, mj = path[k] / side;
      carve_block(mi, mj, SemanticTag::MarkedPath);
      if (k + 1 < path.size()) {
        const int a = path[k], b = path[k + 1];
        if (b == a + 1) carve_passage(a, true, SemanticTag::MarkedPath);
        else if (a == b + 1) carve_passage(b, true, SemanticTag::MarkedPath);
        else if (b == a + side) carve_passage(a, false, SemanticTag::MarkedPath);
        else carve_passage(b, false, SemanticTag::MarkedPath);
      }
    }

    auto block_center_cell = [&](int cell) {
      const int mi = cell % side, mj = cell / side;
      return env.grid.index(1 + mi * pitch + (cw - 1) / 2, 1 + mj * pitch + (cw - 1) / 2);
    };

    const int goal_cell = block_center_cell(path.front());
    const int start_cell = block_center_cell(path[(path.size() - 1) / 2]);
    if (goal_cell == start_cell) continue;
    env.goal = env.grid.center(goal_cell);
    env.starts = {env.grid.center(start_cell)};
    env.grid.semantic[goal_cell] = SemanticTag::None;
    env.grid.semantic[start_cell] = SemanticTag::None;

    if (validate_env(env, EnvKind::Maze).empty()) return env;
  }
  throw GenerationFailure("generate_maze: constraints not met after bounded retries");
}

namespace {

struct RoomSpec {
  int x0, y0, x1, y1;           // interior rect, inclusive
  std::vector<int> door_cells;  // carved doorway cells
  std::vector<int> interior;    // free interior cells after clutter
};

}  // namespace

KnownEnvironment generate_office(uint64_t seed, const OfficeParams& params) {
  if (params.min_hallways < 2 || params.max_hallways > 4 ||
      params.max_hallways < params.min_hallways || params.clutter_density < 0.0 ||
      params.clutter_density > 0.5)
    throw std::invalid_argument("generate_office: bad parameters");

  Rng rng(mix_seed(seed, 0x6f666663));  // "offc"
  constexpr int hw = 4;  // hallway width, cells

  for (int attempt = 0; attempt < 50; ++attempt) {
    const int W = rng.uniform_int(params.min_width, params.max_width);
    const int H = rng.uniform_int(params.min_height, params.max_height);

    KnownEnvironment env;
    env.seed = seed;
    env.grid = OccupancyGrid::filled(W, H, kResolution, CellState::Occupied);
    std::vector<uint8_t> reserved(env.grid.size(), 0);

    auto carve = [&](int x, int y, SemanticTag tag) {
      const int idx = env.grid.index(x, y);
      env.grid.cells[idx] = CellState::Free;
      env.grid.semantic[idx] = tag;
    };

    // hallway skeleton: one horizontal hallway plus 1..3 vertical ones
    const int n_hallways = rng.uniform_int(params.min_hallways, params.max_hallways);
    const int hy = rng.uniform_int(H / 2 - H / 8, H / 2 + H / 8);
    struct Hall {
      bool horizontal;
      int lo;  // first row (horizontal) or column (vertical)
    };
    std::vector<Hall> halls;
    halls.push_back({true, hy});
    std::vector<int> vxs;
    for (int v = 0; v < n_hallways - 1; ++v) {
      bool placed = false;
      for (int t = 0; t < 40 && !placed; ++t) {
        const int vx = rng.uniform_int(10, W - 14);
        bool ok = true;
        for (const int other : vxs)
          if (std::abs(other - vx) < 30) ok = false;
        if (ok) {
          vxs.push_back(vx);
          halls.push_back({false, vx});
          placed = true;
        }
      }
    }
    for (const Hall& hall : halls) {
      if (hall.horizontal) {
        for (int y = hall.lo; y < hall.lo + hw; ++y)
          for (int x = 1; x < W - 1; ++x) carve(x, y, SemanticTag::Hallway);
      } else {
        for (int x = hall.lo; x < hall.lo + hw; ++x)
          for (int y = 1; y < H - 1; ++y) carve(x, y, SemanticTag::Hallway);
      }
    }
    for (int i = 0; i < env.grid.size(); ++i)
      if (env.grid.cells[i] == CellState::Free) reserved[i] = 1;

    // room placement along each hallway side
    std::vector<RoomSpec> rooms;
    auto rect_ok = [&](int x0, int y0, int x1, int y1) {
      if (x0 - 1 < 1 || y0 - 1 < 1 || x1 + 1 > W - 2 || y1 + 1 > H - 2) return false;
      for (int y = y0 - 1; y <= y1 + 1; ++y)
        for (int x = x0 - 1; x <= x1 + 1; ++x)
          if (reserved[env.grid.index(x, y)]) return false;
      return true;
    };
    auto reserve_rect = [&](int x0, int y0, int x1, int y1) {
      for (int y = y0 - 1; y <= y1 + 1; ++y)
        for (int x = x0 - 1; x <= x1 + 1; ++x) reserved[env.grid.index(x, y)] = 1;
    };

    for (const Hall& hall : halls) {
      const int target = rng.uniform_int(params.min_rooms_per_hallway,
                                         params.max_rooms_per_hallway);
      int placed = 0;
      for (int side = 0; side < 2 && placed < target; ++side) {
        int cursor = 3;
        const int limit = hall.horizontal ? W - 3 : H - 3;
        while (cursor < limit && placed < target) {
          const int wr = rng.uniform_int(10, 16);
          const int dr = rng.uniform_int(10, 14);
          int x0, y0, x1, y1;
          if (hall.horizontal) {
            x0 = cursor;
            x1 = cursor + wr - 1;
            if (side == 0) {  // above: smaller y, wall at hy-1
              y1 = hy - 2;
              y0 = y1 - dr + 1;
            } else {  // below: wall at hy+hw
              y0 = hy + hw + 1;
              y1 = y0 + dr - 1;
            }
          } else {
            y0 = cursor;
            y1 = cursor + wr - 1;
            if (side == 0) {  // left of the vertical hallway
              x1 = hall.lo - 2;
              x0 = x1 - dr + 1;
            } else {
              x0 = hall.lo + hw + 1;
              x1 = x0 + dr - 1;
            }
          }
          if (x1 >= x0 && y1 >= y0 && rect_ok(x0, y0, x1, y1)) {
            RoomSpec room{x0, y0, x1, y1, {}, {}};
            for (int y = y0; y <= y1; ++y)
              for (int x = x0; x <= x1; ++x) carve(x, y, SemanticTag::Room);
            reserve_rect(x0, y0, x1, y1);
            // doorway: two cells through the hallway-side wall
            if (hall.horizontal) {
              const int dx = rng.uniform_int(x0, x1 - 1);
              const int wy = side == 0 ? hy - 1 : hy + hw;
              carve(dx, wy, SemanticTag::Room);
              carve(dx + 1, wy, SemanticTag::Room);
              room.door_cells = {env.grid.index(dx, wy), env.grid.index(dx + 1, wy)};
            } else {
              const int dy = rng.uniform_int(y0, y1 - 1);
              const int wx = side == 0 ? hall.lo - 1 : hall.lo + hw;
              carve(wx, dy, SemanticTag::Room);
              carve(wx, dy + 1, SemanticTag::Room);
              room.door_cells = {env.grid.index(wx, dy), env.grid.index(wx, dy + 1)};
            }
            rooms.push_back(room);
            ++placed;
            cursor += wr + 2;
          } else {
            cursor += 3;
          }
        }
      }
    }
    if (rooms.size() < 3) continue;

    // corner rooms: a second doorway where a room wall abuts another hallway
    for (RoomSpec& room : rooms) {
      if (!rng.bernoulli(params.corner_room_probability)) continue;
      bool done = false;
      for (int pass = 0; pass < 2 && !done; ++pass) {
        // scan the four wall lines for a stretch adjacent to Hallway cells
        struct WallScan {
          int x, y, ox, oy;  // wall cell and outward direction
        };
        std::vector<WallScan> options;
        for (int x = room.x0; x < room.x1; ++x) {
          options.push_back({x, room.y0 - 1, 0, -1});
          options.push_back({x, room.y1 + 1, 0, 1});
        }
        for (int y = room.y0; y < room.y1; ++y) {
          options.push_back({room.x0 - 1, y, -1, 0});
          options.push_back({room.x1 + 1, y, 1, 0});
        }
        for (const WallScan& w : options) {
          const int bx = w.x + w.ox, by = w.y + w.oy;
          const int b2x = (w.ox == 0 ? w.x + 1 : w.x) + w.ox;
          const int b2y = (w.oy == 0 ? w.y + 1 : w.y) + w.oy;
          if (!env.grid.in_bounds(bx, by) || !env.grid.in_bounds(b2x, b2y)) continue;
          if (env.grid.tag_at(bx, by) != SemanticTag::Hallway ||
              env.grid.tag_at(b2x, b2y) != SemanticTag::Hallway)
            continue;
          const int wx2 = w.ox == 0 ? w.x + 1 : w.x;
          const int wy2 = w.oy == 0 ? w.y + 1 : w.y;
          if (env.grid.at(w.x, w.y) != CellState::Occupied ||
              env.grid.at(wx2, wy2) != CellState::Occupied)
            continue;
          if (!room.door_cells.empty() &&
              (env.grid.index(w.x, w.y) == room.door_cells[0])) continue;
          carve(w.x, w.y, SemanticTag::Room);
          carve(wx2, wy2, SemanticTag::Room);
          room.door_cells.push_back(env.grid.index(w.x, w.y));
          room.door_cells.push_back(env.grid.index(wx2, wy2));
          done = true;
          break;
        }
      }
    }

    // clutter: small occupied blobs inside rooms, kept away from doorways and
    // reverted when they disconnect the room interior
    for (RoomSpec& room : rooms) {
      const int area = (room.x1 - room.x0 + 1) * (room.y1 - room.y0 + 1);
      const int want = static_cast<int>(params.clutter_density * area);
      auto near_door = [&](int x, int y) {
        for (const int d : room.door_cells) {
          if (std::abs(x - env.grid.x_of(d)) <= 2 && std::abs(y - env.grid.y_of(d)) <= 2)
            return true;
        }
        return false;
      };
      auto room_connected = [&]() {
        std::vector<int> free_cells;
        for (int y = room.y0; y <= room.y1; ++y)
          for (int x = room.x0; x <= room.x1; ++x)
            if (env.grid.at(x, y) == CellState::Free)
              free_cells.push_back(env.grid.index(x, y));
        if (free_cells.empty()) return false;
        std::vector<uint8_t> seen(env.grid.size(), 0);
        std::vector<int> stack{free_cells.front()};
        seen[free_cells.front()] = 1;
        int reached = 0;
        while (!stack.empty()) {
          const int c = stack.back();
          stack.pop_back();
          ++reached;
          const int cx = env.grid.x_of(c), cy = env.grid.y_of(c);
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              const int nx = cx + dx, ny = cy + dy;
              if (nx < room.x0 || nx > room.x1 || ny < room.y0 || ny > room.y1) continue;
              const int n = env.grid.index(nx, ny);
              if (!seen[n] && env.grid.cells[n] == CellState::Free) {
                seen[n] = 1;
                stack.push_back(n);
              }
            }
        }
        return reached == static_cast<int>(free_cells.size());
      };

      int placed_cells = 0;
      for (int t = 0; t < 6 * want && placed_cells < want; ++t) {
        const int x = rng.uniform_int(room.x0, room.x1);
        const int y = rng.uniform_int(room.y0, room.y1);
        const bool wide = rng.bernoulli(0.5);
        const int x2 = wide ? std::min(x + 1, room.x1) : x;
        if (near_door(x, y) || near_door(x2, y)) continue;
        if (env.grid.at(x, y) != CellState::Free || env.grid.at(x2, y) != CellState::Free)
          continue;
        env.grid.cells[env.grid.index(x, y)] = CellState::Occupied;
        env.grid.semantic[env.grid.index(x, y)] = SemanticTag::Clutter;
        env.grid.cells[env.grid.index(x2, y)] = CellState::Occupied;
        env.grid.semantic[env.grid.index(x2, y)] = SemanticTag::Clutter;
        if (!room_connected()) {
          env.grid.cells[env.grid.index(x, y)] = CellState::Free;
          env.grid.semantic[env.grid.index(x, y)] = SemanticTag::Room;
          env.grid.cells[env.grid.index(x2, y)] = CellState::Free;
          env.grid.semantic[env.grid.index(x2, y)] = SemanticTag::Room;
          continue;
        }
        placed_cells += (x2 == x) ? 1 : 2;
      }
      for (int y = room.y0; y <= room.y1; ++y)
        for (int x = room.x0; x <= room.x1; ++x)
          if (env.grid.at(x, y) == CellState::Free)
            room.interior.push_back(env.grid.index(x, y));
    }

    // goal in a room interior, start in a hallway
    std::vector<int> goal_candidates;
    for (const RoomSpec& room : rooms)
      goal_candidates.insert(goal_candidates.end(), room.interior.begin(),
                             room.interior.end());
    std::vector<int> hallway_cells;
    for (int i = 0; i < env.grid.size(); ++i)
      if (env.grid.cells[i] == CellState::Free &&
          env.grid.semantic[i] == SemanticTag::Hallway)
        hallway_cells.push_back(i);
    if (goal_candidates.empty() || hallway_cells.empty()) continue;

    const int goal_cell = goal_candidates[rng.uniform_int(
        0, static_cast<int>(goal_candidates.size()) - 1)];
    const int start_cell =
        hallway_cells[rng.uniform_int(0, static_cast<int>(hallway_cells.size()) - 1)];
    env.goal = env.grid.center(goal_cell);
    env.starts = {env.grid.center(start_cell)};
    env.grid.semantic[goal_cell] = SemanticTag::None;
    env.grid.semantic[start_cell] = SemanticTag::None;

    if (validate_env(env, EnvKind::Office).empty()) return env;
  }
  throw GenerationFailure("generate_office: constraints not met after bounded retries");
}

std::vector<Violation> validate_env(const KnownEnvironment& env, EnvKind kind) {
  std::vector<Violation> out;
  const OccupancyGrid& g = env.grid;

  for (int i = 0; i < g.size(); ++i)
    if (g.cells[i] == CellState::Unknown) {
      out.push_back({ViolationCode::UnknownCells, "cell " + std::to_string(i)});
      break;
    }

  bool border_ok = true;
  for (int x = 0; x < g.width && border_ok; ++x)
    border_ok = g.at(x, 0) == CellState::Occupied &&
                g.at(x, g.height - 1) == CellState::Occupied;
  for (int y = 0; y < g.height && border_ok; ++y)
    border_ok = g.at(0, y) == CellState::Occupied &&
                g.at(g.width - 1, y) == CellState::Occupied;
  if (!border_ok) out.push_back({ViolationCode::BorderOpen, "border not closed"});

  for (int i = 0; i < g.size(); ++i) {
    const SemanticTag t = g.semantic[i];
    const CellState s = g.cells[i];
    const bool ok = (t == SemanticTag::None) ||
                    (t == SemanticTag::Clutter && s == CellState::Occupied) ||
                    (t != SemanticTag::Clutter && s == CellState::Free);
    if (!ok) {
      out.push_back({ViolationCode::SemanticInconsistent, "cell " + std::to_string(i)});
      break;
    }
  }

  const int goal_cell = g.cell_of(env.goal);
  if (g.cells[goal_cell] != CellState::Free)
    out.push_back({ViolationCode::BadStartOrGoal, "goal not on a Free cell"});
  for (const Pose& s : env.starts)
    if (g.cells[g.cell_of(s)] != CellState::Free)
      out.push_back({ViolationCode::BadStartOrGoal, "start not on a Free cell"});

  if (g.cells[goal_cell] == CellState::Free) {
    const DistanceField f = dijkstra_field(g, {goal_cell}, UnknownPolicy::Occupied);
    for (size_t i = 0; i < env.starts.size(); ++i) {
      const int c = g.cell_of(env.starts[i]);
      if (g.cells[c] != CellState::Free) continue;
      if (f.at(c) == kUnreachable)
        out.push_back({ViolationCode::UnreachableGoal, "start " + std::to_string(i)});
    }
  }

  if (kind == EnvKind::Maze) {
    // free-space cycles enclose occupied islands that never touch the border
    std::vector<uint8_t> seen(g.size(), 0);
    for (int sidx = 0; sidx < g.size(); ++sidx) {
      if (seen[sidx] || g.cells[sidx] != CellState::Occupied) continue;
      std::vector<int> stack{sidx};
      seen[sidx] = 1;
      bool touches_border = false;
      while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        const int x = g.x_of(c), y = g.y_of(c);
        if (x == 0 || y == 0 || x == g.width - 1 || y == g.height - 1)
          touches_border = true;
        const int nbr[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : nbr) {
          const int nx = x + d[0], ny = y + d[1];
          if (!g.in_bounds(nx, ny)) continue;
          const int n = g.index(nx, ny);
          if (!seen[n] && g.cells[n] == CellState::Occupied) {
            seen[n] = 1;
            stack.push_back(n);
          }
        }
      }
      if (!touches_border) {
        out.push_back({ViolationCode::NotSimplyConnected,
                       "occupied island at cell " + std::to_string(sidx)});
        break;
      }
    }
  }
  return out;
}

}  // namespace mrlsp
