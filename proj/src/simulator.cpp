#include "mrlsp/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mrlsp/distance.hpp"
#include "mrlsp/rng.hpp"

namespace mrlsp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// advance a pose along a cell path by at most `budget` meters; the first leg
// returns to the current cell's center so segments stay between neighboring
// cell centers
Pose advance_along(const OccupancyGrid& grid, const Pose& pose,
                   const std::vector<int>& path, double budget) {
  Pose cur = pose;
  std::vector<Pose> pts;
  if (!path.empty()) {
    const Pose own = grid.center(path.front());
    if (distance(cur, own) > 1e-9) pts.push_back(own);
    for (size_t i = 1; i < path.size(); ++i) pts.push_back(grid.center(path[i]));
  }
  for (const Pose& pt : pts) {
    const double seg = distance(cur, pt);
    if (seg <= 1e-12) continue;
    if (seg <= budget) {
      cur = pt;
      budget -= seg;
    } else {
      const double f = budget / seg;
      cur = Pose{cur.x + (pt.x - cur.x) * f, cur.y + (pt.y - cur.y) * f};
      budget = 0.0;
      break;
    }
  }
  return cur;
}

}  // namespace

double team_cost(const std::vector<StepRecord>& records, double step_length) {
  return static_cast<double>(records.size()) * step_length;
}

TrialResult run_trial(const KnownEnvironment& env, const TrialConfig& cfg) {
  const OccupancyGrid& world = env.grid;
  const double step_length = cfg.step_length > 0.0 ? cfg.step_length : world.resolution;
  if (step_length > world.resolution * std::sqrt(2.0) + 1e-12)
    throw std::invalid_argument("run_trial: step_length exceeds resolution*sqrt(2)");
  if (cfg.max_steps <= 0) throw std::invalid_argument("run_trial: max_steps must be > 0");
  if (cfg.n_robots < 1 || cfg.n_robots > 9)
    throw std::invalid_argument("run_trial: n_robots must be in 1..9");

  TrialResult result;
  result.seed = cfg.seed;

  std::vector<Pose> poses(cfg.n_robots);
  for (int i = 0; i < cfg.n_robots; ++i)
    poses[i] = env.starts[std::min<size_t>(i, env.starts.size() - 1)];

  PartialMap map = unknown_map_like(world);
  const double contact_radius = world.resolution * 0.5;

  // the known-space planner ignores the partial map entirely
  std::vector<std::vector<int>> known_routes;
  if (cfg.planner == PlannerKind::Known) known_routes = known_space_plan(env, poses);

  EstimatorConfig est_cfg;
  est_cfg.kind = cfg.estimator;
  est_cfg.noise = cfg.noise;
  est_cfg.re_one_way = cfg.re_one_way;
  est_cfg.semantic_beta = cfg.semantic_beta;
  est_cfg.seed = cfg.seed;

  std::vector<SubgoalId> prev_ids;
  CollectiveAction current_action;
  bool have_action = false;

  auto goal_contact = [&]() {
    for (const Pose& p : poses)
      if (distance(p, env.goal) <= contact_radius + 1e-12) return true;
    return false;
  };

  for (int step = 0; step < cfg.max_steps; ++step) {
    for (const Pose& p : poses) map = integrate(map, raycast_sense(env, p, cfg.sensor.range_m, cfg.sensor.n_rays));

    if (goal_contact()) {
      result.success = true;
      break;
    }

    // per-robot routes for this step
    std::vector<std::vector<int>> routes(cfg.n_robots);
    StepRecord rec;

    if (cfg.planner == PlannerKind::Known) {
      // the winner robot re-plans from its current pose; the rest hold
      for (int i = 0; i < cfg.n_robots; ++i) {
        if (known_routes[i].empty()) continue;
        const auto p = astar_path(world, poses[i], env.goal, UnknownPolicy::Occupied);
        routes[i] = p ? *p : std::vector<int>{};
      }
    } else {
      const std::vector<Subgoal> all_subgoals = extract_subgoals(map);
      rec.subgoal_count = static_cast<int>(all_subgoals.size());
      const int goal_cell = map.cell_of(env.goal);
      const bool goal_seen = map.cells[goal_cell] == CellState::Free;

      bool endgame = false;
      if (goal_seen) {
        // goal revealed: route the nearest robot straight at it
        const DistanceField f = dijkstra_field(map, {goal_cell}, UnknownPolicy::Occupied);
        int best = -1;
        double best_d = kUnreachable;
        for (int i = 0; i < cfg.n_robots; ++i) {
          const double d = f.at(map.cell_of(poses[i]));
          if (d < best_d) {
            best_d = d;
            best = i;
          }
        }
        if (best >= 0) {
          const auto p = astar_path(map, poses[best], env.goal, UnknownPolicy::Occupied);
          if (p) {
            routes[best] = *p;
            endgame = true;
          }
        }
        if (!endgame) {
          // visible but not yet reachable through known space: head there
          // optimistically with the closest-by-crow robot
          int pick = 0;
          double bd = kUnreachable;
          for (int i = 0; i < cfg.n_robots; ++i) {
            const double d = distance(poses[i], env.goal);
            if (d < bd) {
              bd = d;
              pick = i;
            }
          }
          const auto p = astar_path(map, poses[pick], env.goal, UnknownPolicy::Free);
          if (p) {
            routes[pick] = *p;
            endgame = true;
          }
        }
      }

      if (!endgame) {
        if (all_subgoals.empty()) {
          result.failure_reason = "no subgoals and goal not visible";
          break;
        }
        const DistanceModel model = build_distance_model(map, poses, all_subgoals, env.goal);
        const std::vector<Subgoal> top = select_top_k(all_subgoals, cfg.top_k, model);
        std::vector<SubgoalId> ids;
        for (const Subgoal& s : top) ids.push_back(s.id);

        const bool replan = cfg.replan == ReplanPolicy::EveryStep || !have_action ||
                            ids != prev_ids;
        if (replan) {
          const auto t0 = Clock::now();
          try {
            const PropertyMap props = estimate_properties(est_cfg, env, map, top, env.goal);
            const AbstractBelief belief =
                make_root_belief(ids, cfg.n_robots, static_cast<uint64_t>(step));
            switch (cfg.planner) {
              case PlannerKind::MrLsp: {
                double c = cfg.pouct.c_factor * optimistic_bound(belief, model);
                if (!std::isfinite(c) || c <= 0.0) c = 100.0;
                current_action =
                    pouct_plan(belief, props, model, cfg.pouct.n_samples, c,
                               cfg.pouct.depth_limit, mix_seed(cfg.seed, step));
                break;
              }
              case PlannerKind::Optimistic:
                current_action = optimistic_plan(belief, model);
                break;
              case PlannerKind::LsaLsp:
                current_action = lsa_lsp_plan(belief, props, model);
                break;
              case PlannerKind::Known:
                break;
            }
            have_action = true;
            prev_ids = ids;
          } catch (const std::exception& e) {
            result.failure_reason = std::string("planning failed: ") + e.what();
            break;
          }
          rec.planning_ms = ms_since(t0);
        }
        rec.action = current_action.assignment;

        // route each robot to its assigned frontier through known space,
        // then optimistically onward to the goal
        std::unordered_map<SubgoalId, int> centroid;
        for (const Subgoal& s : top) centroid[s.id] = s.centroid;
        for (int i = 0; i < cfg.n_robots; ++i) {
          SubgoalId target = current_action.assignment[i];
          if (!centroid.count(target)) {
            // assignment from a previous step whose frontier vanished:
            // fall back to the nearest surviving subgoal
            double bd = kUnreachable;
            for (const Subgoal& s : top) {
              const double d = distance(poses[i], map.center(s.centroid));
              if (d < bd) {
                bd = d;
                target = s.id;
              }
            }
          }
          const Pose target_pose = map.center(centroid.at(target));
          if (map.cell_of(poses[i]) == centroid.at(target)) {
            const auto p = astar_path(map, poses[i], env.goal, UnknownPolicy::Free);
            if (p) routes[i] = *p;
          } else {
            const auto p = astar_path(map, poses[i], target_pose, UnknownPolicy::Occupied);
            if (p) {
              routes[i] = *p;
            } else {
              const auto q = astar_path(map, poses[i], target_pose, UnknownPolicy::Free);
              if (q) routes[i] = *q;
            }
          }
        }
      }
    }

    if (!result.failure_reason.empty()) break;

    for (int i = 0; i < cfg.n_robots; ++i)
      if (!routes[i].empty()) poses[i] = advance_along(map, poses[i], routes[i], step_length);

    rec.poses = poses;
    result.records.push_back(std::move(rec));

    if (goal_contact()) {
      result.success = true;
      break;
    }
  }

  if (!result.success && result.failure_reason.empty())
    result.failure_reason =
        static_cast<int>(result.records.size()) >= cfg.max_steps ? "timeout" : "stalled";
  result.steps = static_cast<int>(result.records.size());
  result.team_cost = team_cost(result.records, step_length);
  result.final_map = std::move(map);
  return result;
}

namespace {

struct Pixmap {
  int w, h, scale;
  std::vector<uint8_t> rgb;

  Pixmap(int cells_w, int cells_h, int s)
      : w(cells_w * s), h(cells_h * s), scale(s), rgb(static_cast<size_t>(w) * h * 3, 255) {}

  void set(int px, int py, uint8_t r, uint8_t g, uint8_t b) {
    if (px < 0 || px >= w || py < 0 || py >= h) return;
    const size_t o = (static_cast<size_t>(py) * w + px) * 3;
    rgb[o] = r;
    rgb[o + 1] = g;
    rgb[o + 2] = b;
  }

  void fill_cell(int cx, int cy, uint8_t r, uint8_t g, uint8_t b) {
    for (int dy = 0; dy < scale; ++dy)
      for (int dx = 0; dx < scale; ++dx) set(cx * scale + dx, cy * scale + dy, r, g, b);
  }

  void line(int x0, int y0, int x1, int y1, uint8_t r, uint8_t g, uint8_t b) {
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      set(x0, y0, r, g, b);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }
};

}  // namespace

void render_trajectory(const KnownEnvironment& env, const TrialResult& result,
                       const std::string& path) {
  if (result.records.empty() && result.final_map.size() == 0)
    throw std::invalid_argument("render_trajectory: empty result");
  const OccupancyGrid& g = env.grid;
  const int scale = 5;
  Pixmap img(g.width, g.height, scale);

  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x) {
      const int i = g.index(x, y);
      const bool unknown = result.final_map.size() == g.size() &&
                           result.final_map.cells[i] == CellState::Unknown;
      if (unknown) {
        img.fill_cell(x, y, 160, 160, 160);
      } else if (g.cells[i] == CellState::Occupied) {
        img.fill_cell(x, y, 0, 0, 0);
      } else {
        switch (g.semantic[i]) {
          case SemanticTag::MarkedPath: img.fill_cell(x, y, 190, 245, 190); break;
          case SemanticTag::Hallway: img.fill_cell(x, y, 228, 238, 252); break;
          case SemanticTag::Room: img.fill_cell(x, y, 252, 244, 228); break;
          default: img.fill_cell(x, y, 255, 255, 255);
        }
      }
    }

  const uint8_t palette[6][3] = {{30, 70, 220},  {240, 140, 20}, {150, 40, 180},
                                 {20, 160, 140}, {200, 40, 40},  {120, 120, 30}};
  auto to_px = [&](const Pose& p, int& px, int& py) {
    px = static_cast<int>(p.x / g.resolution * scale);
    py = static_cast<int>(p.y / g.resolution * scale);
  };
  const int n_robots = result.records.empty() ? static_cast<int>(env.starts.size())
                                              : static_cast<int>(result.records[0].poses.size());
  for (int r = 0; r < n_robots; ++r) {
    const auto& c = palette[r % 6];
    Pose prev = env.starts[std::min<size_t>(r, env.starts.size() - 1)];
    for (const StepRecord& rec : result.records) {
      int x0, y0, x1, y1;
      to_px(prev, x0, y0);
      to_px(rec.poses[r], x1, y1);
      img.line(x0, y0, x1, y1, c[0], c[1], c[2]);
      prev = rec.poses[r];
    }
  }

  int gx, gy;
  to_px(env.goal, gx, gy);
  for (int d = -scale; d <= scale; ++d) {
    img.set(gx + d, gy, 220, 20, 20);
    img.set(gx, gy + d, 220, 20, 20);
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("render_trajectory: cannot write " + path);
  char header[64];
  std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n", img.w, img.h);
  f << header;
  f.write(reinterpret_cast<const char*>(img.rgb.data()),
          static_cast<std::streamsize>(img.rgb.size()));
  if (!f) throw std::runtime_error("render_trajectory: write failed for " + path);
}

const char* planner_name(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::MrLsp: return "mrlsp";
    case PlannerKind::Optimistic: return "optimistic";
    case PlannerKind::LsaLsp: return "lsa-lsp";
    case PlannerKind::Known: return "known";
  }
  return "?";
}

const char* estimator_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Oracle: return "oracle";
    case EstimatorKind::Noisy: return "noisy";
    case EstimatorKind::Semantic: return "semantic";
  }
  return "?";
}

}  // namespace mrlsp
