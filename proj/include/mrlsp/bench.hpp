#pragma once

#include "mrlsp/simulator.hpp"

namespace mrlsp {

struct EmptyTableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CsvRow {
  uint64_t seed = 0;
  std::string env;
  std::string planner;
  int robots = 1;
  std::string estimator;
  int samples = 0;
  double cost_m = 0.0;
  int steps = 0;
  bool success = false;
  double wall_ms = 0.0;
};

std::string csv_header();
std::string format_row(const CsvRow& row);
CsvRow parse_row(const std::string& line);
std::vector<CsvRow> read_csv(const std::string& path);

struct BenchmarkConfig {
  EnvKind env_kind = EnvKind::Maze;
  MazeParams maze;
  OfficeParams office;
  std::vector<uint64_t> seeds;
  std::vector<PlannerKind> planners;
  std::vector<int> robot_counts;
  std::vector<int> sample_counts = {15000};  // PO-UCT budgets, mrlsp rows only
  TrialConfig base;                          // estimator, sensor, replan, ... shared knobs
  std::string out_dir;
  int parallelism = 1;
  bool log_steps = false;
};

// Runs every (seed, planner, robots[, samples]) trial not already present in
// out_dir/results.csv, appending one row each; failures become success=false
// rows. Generated environments are saved under out_dir/envs/. Returns true
// when every requested trial has a row afterwards.
bool run_benchmark(const BenchmarkConfig& cfg);

// Mean cost per planner and robot count over successful trials, failure
// counts, and the percent savings of mrlsp over the optimistic baseline.
std::string summarize(const std::string& csv_path);

// Per-seed (cost_a, cost_b) pairs for two planners at one robot count,
// seeds ascending; incomplete seeds are reported on stderr and omitted.
// Returns the number of pairs written.
int scatter_data(const std::string& csv_path, const std::string& planner_a,
                 const std::string& planner_b, int robots, const std::string& out_path);

KnownEnvironment generate_for(EnvKind kind, uint64_t seed, const MazeParams& maze,
                              const OfficeParams& office);
const char* env_kind_name(EnvKind kind);

}  // namespace mrlsp
