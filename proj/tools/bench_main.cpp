// Benchmark driver: runs planner x environment x robot-count sweeps and
// derives tables, scatter files, and trajectory renders from the CSV.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "mrlsp/bench.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace mrlsp;

namespace {

std::vector<uint64_t> parse_seeds(const std::string& spec) {
  std::vector<uint64_t> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dots = tok.find("..");
    if (dots != std::string::npos) {
      const uint64_t lo = std::stoull(tok.substr(0, dots));
      const uint64_t hi = std::stoull(tok.substr(dots + 2));
      for (uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    } else if (!tok.empty()) {
      out.push_back(std::stoull(tok));
    }
  }
  return out;
}

PlannerKind planner_from(const std::string& name) {
  if (name == "mrlsp") return PlannerKind::MrLsp;
  if (name == "optimistic") return PlannerKind::Optimistic;
  if (name == "lsa-lsp") return PlannerKind::LsaLsp;
  if (name == "known") return PlannerKind::Known;
  throw CLI::ValidationError("unknown planner '" + name + "'");
}

EstimatorKind estimator_from(const std::string& name) {
  if (name == "oracle") return EstimatorKind::Oracle;
  if (name == "noisy") return EstimatorKind::Noisy;
  if (name == "semantic") return EstimatorKind::Semantic;
  throw CLI::ValidationError("unknown estimator '" + name + "'");
}

json config_to_json(const BenchmarkConfig& cfg) {
  json j;
  j["env"] = env_kind_name(cfg.env_kind);
  j["maze"] = {{"cells_per_side", cfg.maze.cells_per_side},
               {"corridor_width", cfg.maze.corridor_width},
               {"branch_min", cfg.maze.branch_min},
               {"branch_max", cfg.maze.branch_max}};
  j["office"] = {{"min_hallways", cfg.office.min_hallways},
                 {"max_hallways", cfg.office.max_hallways},
                 {"min_rooms_per_hallway", cfg.office.min_rooms_per_hallway},
                 {"max_rooms_per_hallway", cfg.office.max_rooms_per_hallway},
                 {"clutter_density", cfg.office.clutter_density},
                 {"corner_room_probability", cfg.office.corner_room_probability},
                 {"min_width", cfg.office.min_width},
                 {"max_width", cfg.office.max_width},
                 {"min_height", cfg.office.min_height},
                 {"max_height", cfg.office.max_height}};
  j["estimator"] = estimator_name(cfg.base.estimator);
  j["noise"] = {{"p_flip", cfg.base.noise.p_flip},
                {"cost_sigma_frac", cfg.base.noise.cost_sigma_frac}};
  j["sensor"] = {{"range_m", cfg.base.sensor.range_m}, {"n_rays", cfg.base.sensor.n_rays}};
  j["pouct"] = {{"c_factor", cfg.base.pouct.c_factor},
                {"depth_limit", cfg.base.pouct.depth_limit}};
  j["step_length"] = cfg.base.step_length;
  j["max_steps"] = cfg.base.max_steps;
  j["replan"] = cfg.base.replan == ReplanPolicy::EveryStep ? "every" : "changed";
  j["top_k"] = cfg.base.top_k;
  j["re_one_way"] = cfg.base.re_one_way;
  j["semantic_beta"] = cfg.base.semantic_beta;
  return j;
}

void config_from_json(const json& j, BenchmarkConfig& cfg) {
  const std::string env = j.value("env", "maze");
  cfg.env_kind = env == "office" ? EnvKind::Office : EnvKind::Maze;
  if (j.contains("maze")) {
    const json& m = j["maze"];
    cfg.maze.cells_per_side = m.value("cells_per_side", cfg.maze.cells_per_side);
    cfg.maze.corridor_width = m.value("corridor_width", cfg.maze.corridor_width);
    cfg.maze.branch_min = m.value("branch_min", cfg.maze.branch_min);
    cfg.maze.branch_max = m.value("branch_max", cfg.maze.branch_max);
  }
  if (j.contains("office")) {
    const json& o = j["office"];
    cfg.office.min_hallways = o.value("min_hallways", cfg.office.min_hallways);
    cfg.office.max_hallways = o.value("max_hallways", cfg.office.max_hallways);
    cfg.office.min_rooms_per_hallway =
        o.value("min_rooms_per_hallway", cfg.office.min_rooms_per_hallway);
    cfg.office.max_rooms_per_hallway =
        o.value("max_rooms_per_hallway", cfg.office.max_rooms_per_hallway);
    cfg.office.clutter_density = o.value("clutter_density", cfg.office.clutter_density);
    cfg.office.corner_room_probability =
        o.value("corner_room_probability", cfg.office.corner_room_probability);
    cfg.office.min_width = o.value("min_width", cfg.office.min_width);
    cfg.office.max_width = o.value("max_width", cfg.office.max_width);
    cfg.office.min_height = o.value("min_height", cfg.office.min_height);
    cfg.office.max_height = o.value("max_height", cfg.office.max_height);
  }
  cfg.base.estimator = estimator_from(j.value("estimator", "oracle"));
  if (j.contains("noise")) {
    cfg.base.noise.p_flip = j["noise"].value("p_flip", 0.0);
    cfg.base.noise.cost_sigma_frac = j["noise"].value("cost_sigma_frac", 0.0);
  }
  if (j.contains("sensor")) {
    cfg.base.sensor.range_m = j["sensor"].value("range_m", 12.0);
    cfg.base.sensor.n_rays = j["sensor"].value("n_rays", 720);
  }
  if (j.contains("pouct")) {
    cfg.base.pouct.c_factor = j["pouct"].value("c_factor", 1.5);
    cfg.base.pouct.depth_limit = j["pouct"].value("depth_limit", 5);
  }
  cfg.base.step_length = j.value("step_length", 0.0);
  cfg.base.max_steps = j.value("max_steps", 2000);
  cfg.base.replan =
      j.value("replan", "every") == std::string("changed") ? ReplanPolicy::ChangedOnly
                                                           : ReplanPolicy::EveryStep;
  cfg.base.top_k = j.value("top_k", 7);
  cfg.base.re_one_way = j.value("re_one_way", false);
  cfg.base.semantic_beta = j.value("semantic_beta", 0.5);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-robot navigation-under-uncertainty benchmark"};
  app.require_subcommand(1);

  // ---- run ----
  auto* run = app.add_subcommand("run", "run a trial sweep and append results.csv");
  std::string env_name = "maze", planners_csl = "mrlsp,optimistic,lsa-lsp,known";
  std::string robots_csl = "1,2,3", seeds_spec = "0..9", estimator = "oracle";
  std::string samples_csl = "15000", out_dir = "bench_out", replan = "every";
  BenchmarkConfig cfg;
  double step_length = 0.0, noise_pflip = 0.0, noise_sigma = 0.0;
  run->add_option("--env", env_name, "maze|office")->capture_default_str();
  run->add_option("--planners", planners_csl, "comma list of mrlsp,optimistic,lsa-lsp,known")
      ->capture_default_str();
  run->add_option("--robots", robots_csl, "comma list of team sizes")->capture_default_str();
  run->add_option("--seeds", seeds_spec, "e.g. 0..99 or 3,5,7")->capture_default_str();
  run->add_option("--estimator", estimator, "oracle|noisy|semantic")->capture_default_str();
  run->add_option("--samples", samples_csl, "PO-UCT sample budgets (mrlsp rows)")
      ->capture_default_str();
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_option("--jobs", cfg.parallelism, "parallel trials")->capture_default_str();
  run->add_option("--noise-pflip", noise_pflip, "noisy estimator label flip probability");
  run->add_option("--noise-sigma", noise_sigma, "noisy estimator cost sigma");
  run->add_option("--replan", replan, "every|changed")->capture_default_str();
  run->add_option("--top-k", cfg.base.top_k, "subgoal cap")->capture_default_str();
  run->add_option("--uct-c", cfg.base.pouct.c_factor, "c_explore factor of the root bound")
      ->capture_default_str();
  run->add_option("--depth", cfg.base.pouct.depth_limit, "tree depth limit")
      ->capture_default_str();
  run->add_option("--step-length", step_length, "meters per step (0 = resolution)");
  run->add_option("--max-steps", cfg.base.max_steps, "step budget per trial")
      ->capture_default_str();
  run->add_option("--sensor-range", cfg.base.sensor.range_m, "sensor range, meters")
      ->capture_default_str();
  run->add_option("--rays", cfg.base.sensor.n_rays, "sensor ray count")->capture_default_str();
  run->add_flag("--re-one-way", cfg.base.re_one_way,
                "oracle exploration cost = one-way depth instead of 2x");
  run->add_option("--semantic-beta", cfg.base.semantic_beta,
                  "semantic estimator exploration factor")
      ->capture_default_str();
  run->add_flag("--log-steps", cfg.log_steps, "write per-step JSON-lines logs");
  run->add_option("--maze-side", cfg.maze.cells_per_side, "maze cells per side")
      ->capture_default_str();
  run->add_option("--corridor-width", cfg.maze.corridor_width, "maze corridor width, cells")
      ->capture_default_str();
  run->add_option("--branch-min", cfg.maze.branch_min, "marked branch min, maze cells")
      ->capture_default_str();
  run->add_option("--branch-max", cfg.maze.branch_max, "marked branch max, maze cells")
      ->capture_default_str();
  run->add_option("--clutter", cfg.office.clutter_density, "office clutter density")
      ->capture_default_str();
  run->add_option("--corner-prob", cfg.office.corner_room_probability,
                  "office corner-room probability")
      ->capture_default_str();

  // ---- summarize ----
  auto* sum = app.add_subcommand("summarize", "print mean-cost table from a run directory");
  std::string sum_dir;
  sum->add_option("dir", sum_dir, "run directory")->required();

  // ---- scatter ----
  auto* sca = app.add_subcommand("scatter", "write per-seed paired costs for two planners");
  std::string sca_dir, sca_a = "mrlsp", sca_b = "optimistic";
  int sca_robots = 2;
  sca->add_option("dir", sca_dir, "run directory")->required();
  sca->add_option("--a", sca_a, "first planner")->capture_default_str();
  sca->add_option("--b", sca_b, "second planner")->capture_default_str();
  sca->add_option("--robots", sca_robots, "robot count")->capture_default_str();

  // ---- render ----
  auto* ren = app.add_subcommand("render", "re-run one trial and write a trajectory pixmap");
  std::string ren_dir, ren_planner = "mrlsp";
  uint64_t ren_seed = 0;
  int ren_robots = 2, ren_samples = 0;
  ren->add_option("dir", ren_dir, "run directory (reads config.json)")->required();
  ren->add_option("--seed", ren_seed, "environment seed")->required();
  ren->add_option("--planner", ren_planner, "planner")->capture_default_str();
  ren->add_option("--robots", ren_robots, "robot count")->capture_default_str();
  ren->add_option("--samples", ren_samples, "PO-UCT samples (0 = config default)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      cfg.env_kind = env_name == "office" ? EnvKind::Office : EnvKind::Maze;
      if (env_name != "office" && env_name != "maze")
        throw CLI::ValidationError("--env must be maze or office");
      cfg.seeds = parse_seeds(seeds_spec);
      std::stringstream ps(planners_csl);
      std::string tok;
      while (std::getline(ps, tok, ',')) cfg.planners.push_back(planner_from(tok));
      std::stringstream rs(robots_csl);
      while (std::getline(rs, tok, ',')) cfg.robot_counts.push_back(std::stoi(tok));
      cfg.sample_counts.clear();
      std::stringstream scs(samples_csl);
      while (std::getline(scs, tok, ',')) cfg.sample_counts.push_back(std::stoi(tok));
      cfg.out_dir = out_dir;
      cfg.base.estimator = estimator_from(estimator);
      cfg.base.noise.p_flip = noise_pflip;
      cfg.base.noise.cost_sigma_frac = noise_sigma;
      cfg.base.step_length = step_length;
      cfg.base.replan =
          replan == "changed" ? ReplanPolicy::ChangedOnly : ReplanPolicy::EveryStep;

      fs::create_directories(cfg.out_dir);
      std::ofstream cfg_file(cfg.out_dir + "/config.json");
      cfg_file << config_to_json(cfg).dump(2) << "\n";
      cfg_file.close();

      const bool complete = run_benchmark(cfg);
      std::cout << summarize(cfg.out_dir + "/results.csv");
      return complete ? 0 : 1;
    }

    if (*sum) {
      std::cout << summarize(sum_dir + "/results.csv");
      return 0;
    }

    if (*sca) {
      char name[160];
      std::snprintf(name, sizeof(name), "%s/scatter_%s_vs_%s_r%d.csv", sca_dir.c_str(),
                    sca_a.c_str(), sca_b.c_str(), sca_robots);
      const int n = scatter_data(sca_dir + "/results.csv", sca_a, sca_b, sca_robots, name);
      std::cout << name << ": " << n << " pairs\n";
      return 0;
    }

    if (*ren) {
      BenchmarkConfig rcfg;
      std::ifstream cfg_file(ren_dir + "/config.json");
      if (!cfg_file) throw std::runtime_error("render: missing " + ren_dir + "/config.json");
      json j;
      cfg_file >> j;
      config_from_json(j, rcfg);

      const KnownEnvironment env =
          generate_for(rcfg.env_kind, ren_seed, rcfg.maze, rcfg.office);
      TrialConfig tc = rcfg.base;
      tc.planner = planner_from(ren_planner);
      tc.n_robots = ren_robots;
      tc.seed = ren_seed;
      if (ren_samples > 0) tc.pouct.n_samples = ren_samples;
      const TrialResult res = run_trial(env, tc);
      char name[192];
      std::snprintf(name, sizeof(name), "%s/traj_%s_%s_r%d_seed%llu.ppm", ren_dir.c_str(),
                    env_kind_name(rcfg.env_kind), ren_planner.c_str(), ren_robots,
                    static_cast<unsigned long long>(ren_seed));
      render_trajectory(env, res, name);
      std::cout << name << " (cost " << res.team_cost << " m, "
                << (res.success ? "success" : "failure") << ")\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
