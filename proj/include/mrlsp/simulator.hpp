#pragma once

#include "mrlsp/baselines.hpp"
#include "mrlsp/belief.hpp"
#include "mrlsp/environments.hpp"
#include "mrlsp/estimators.hpp"
#include "mrlsp/pouct.hpp"
#include "mrlsp/sensing.hpp"

namespace mrlsp {

enum class PlannerKind : uint8_t { MrLsp, Optimistic, LsaLsp, Known };

enum class ReplanPolicy : uint8_t { EveryStep, ChangedOnly };

struct SensorParams {
  double range_m = 12.0;
  int n_rays = 720;
};

struct PouctConfig {
  int n_samples = 15000;
  double c_factor = 1.5;  // c_explore = c_factor * optimistic root bound
  int depth_limit = 5;
};

struct TrialConfig {
  PlannerKind planner = PlannerKind::MrLsp;
  int n_robots = 1;
  EstimatorKind estimator = EstimatorKind::Oracle;
  NoiseParams noise;
  SensorParams sensor;
  PouctConfig pouct;
  double step_length = 0.0;  // meters per step; 0 = grid resolution
  int max_steps = 2000;
  ReplanPolicy replan = ReplanPolicy::EveryStep;
  int top_k = 7;
  bool re_one_way = false;
  double semantic_beta = 0.5;
  uint64_t seed = 0;
};

struct StepRecord {
  std::vector<Pose> poses;          // after the move
  std::vector<SubgoalId> action;    // empty during the direct-to-goal endgame
  int subgoal_count = 0;
  double planning_ms = 0.0;         // nonzero on replanning steps
};

struct TrialResult {
  bool success = false;
  double team_cost = 0.0;  // makespan at unit speed
  int steps = 0;
  std::string failure_reason;
  std::vector<StepRecord> records;
  PartialMap final_map;
  uint64_t seed = 0;
};

// Closed-loop navigation: sense, integrate into the shared map, extract
// subgoals, plan a collective action, advance every robot at most one step
// along its route; repeats until a robot touches the goal or max_steps.
TrialResult run_trial(const KnownEnvironment& env, const TrialConfig& cfg);

// Elapsed time at unit speed: robots move simultaneously, so the team cost
// is the step count times the step length regardless of team size.
double team_cost(const std::vector<StepRecord>& records, double step_length);

// Portable pixmap of the trial: walls black, unknown-at-end gray, per-robot
// polylines, goal marker. Deterministic bytes for fixed inputs.
void render_trajectory(const KnownEnvironment& env, const TrialResult& result,
                       const std::string& path);

const char* planner_name(PlannerKind kind);
const char* estimator_name(EstimatorKind kind);

}  // namespace mrlsp
