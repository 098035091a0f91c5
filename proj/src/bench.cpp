#include "mrlsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace mrlsp {

std::string csv_header() {
  return "seed,env,planner,robots,estimator,samples,cost_m,steps,success,wall_ms";
}

std::string format_row(const CsvRow& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%llu,%s,%s,%d,%s,%d,%.3f,%d,%d,%.1f",
                static_cast<unsigned long long>(r.seed), r.env.c_str(),
                r.planner.c_str(), r.robots, r.estimator.c_str(), r.samples, r.cost_m,
                r.steps, r.success ? 1 : 0, r.wall_ms);
  return std::string(buf);
}

CsvRow parse_row(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) f.push_back(tok);
  if (f.size() != 10) throw std::invalid_argument("csv: bad row '" + line + "'");
  CsvRow r;
  r.seed = std::stoull(f[0]);
  r.env = f[1];
  r.planner = f[2];
  r.robots = std::stoi(f[3]);
  r.estimator = f[4];
  r.samples = std::stoi(f[5]);
  r.cost_m = std::stod(f[6]);
  r.steps = std::stoi(f[7]);
  r.success = f[8] == "1";
  r.wall_ms = std::stod(f[9]);
  return r;
}

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) return {};
  std::vector<CsvRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("seed,", 0) == 0) continue;
    }
    rows.push_back(parse_row(line));
  }
  return rows;
}

KnownEnvironment generate_for(EnvKind kind, uint64_t seed, const MazeParams& maze,
                              const OfficeParams& office) {
  switch (kind) {
    case EnvKind::Maze: return generate_maze(seed, maze);
    case EnvKind::Office: return generate_office(seed, office);
    default: throw std::invalid_argument("generate_for: generic kind has no generator");
  }
}

const char* env_kind_name(EnvKind kind) {
  switch (kind) {
    case EnvKind::Maze: return "maze";
    case EnvKind::Office: return "office";
    default: return "generic";
  }
}

namespace {

std::string trial_key(uint64_t seed, const std::string& planner, int robots,
                      int samples) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%llu|%s|%d|%d",
                static_cast<unsigned long long>(seed), planner.c_str(), robots, samples);
  return std::string(buf);
}

struct Task {
  uint64_t seed;
  PlannerKind planner;
  int robots;
  int samples;
};

void write_step_log(const std::string& path, const TrialResult& res) {
  std::ofstream f(path);
  for (size_t t = 0; t < res.records.size(); ++t) {
    const StepRecord& r = res.records[t];
    f << "{\"t\":" << t << ",\"poses\":[";
    for (size_t i = 0; i < r.poses.size(); ++i) {
      if (i) f << ",";
      char buf[64];
      std::snprintf(buf, sizeof(buf), "{\"x\":%.3f,\"y\":%.3f}", r.poses[i].x,
                    r.poses[i].y);
      f << buf;
    }
    f << "],\"action\":[";
    for (size_t i = 0; i < r.action.size(); ++i) {
      if (i) f << ",";
      f << r.action[i];
    }
    f << "],\"subgoals\":" << r.subgoal_count << ",\"planning_ms\":" << r.planning_ms
      << "}\n";
  }
}

}  // namespace

bool run_benchmark(const BenchmarkConfig& cfg) {
  if (cfg.seeds.empty()) throw std::invalid_argument("run_benchmark: no seeds");
  fs::create_directories(cfg.out_dir);
  fs::create_directories(cfg.out_dir + "/envs");
  const std::string csv_path = cfg.out_dir + "/results.csv";

  std::set<std::string> done;
  for (const CsvRow& r : read_csv(csv_path))
    done.insert(trial_key(r.seed, r.planner, r.robots, r.samples));

  std::vector<Task> tasks;
  for (const uint64_t seed : cfg.seeds)
    for (const PlannerKind planner : cfg.planners)
      for (const int robots : cfg.robot_counts) {
        const std::vector<int> samples =
            planner == PlannerKind::MrLsp ? cfg.sample_counts : std::vector<int>{0};
        for (const int s : samples)
          if (!done.count(trial_key(seed, planner_name(planner), robots, s)))
            tasks.push_back({seed, planner, robots, s});
      }

  std::ofstream out;
  const bool fresh = !fs::exists(csv_path) || fs::file_size(csv_path) == 0;
  out.open(csv_path, std::ios::app);
  if (!out) throw std::runtime_error("run_benchmark: cannot write " + csv_path);
  if (fresh) out << csv_header() << "\n";

  // environments are shared between trials of one seed
  std::mutex env_mutex;
  std::map<uint64_t, KnownEnvironment> envs;
  auto get_env = [&](uint64_t seed) -> const KnownEnvironment& {
    std::lock_guard<std::mutex> lock(env_mutex);
    auto it = envs.find(seed);
    if (it == envs.end()) {
      KnownEnvironment env = generate_for(cfg.env_kind, seed, cfg.maze, cfg.office);
      char name[96];
      std::snprintf(name, sizeof(name), "%s/envs/%s_%llu.env", cfg.out_dir.c_str(),
                    env_kind_name(cfg.env_kind),
                    static_cast<unsigned long long>(seed));
      if (!fs::exists(name)) save_environment(env, name);
      it = envs.emplace(seed, std::move(env)).first;
    }
    return it->second;
  };

  std::mutex out_mutex;
  std::atomic<size_t> next{0};
  std::atomic<int> failures{0};

  auto worker = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      CsvRow row;
      row.seed = task.seed;
      row.env = env_kind_name(cfg.env_kind);
      row.planner = planner_name(task.planner);
      row.robots = task.robots;
      row.estimator = estimator_name(cfg.base.estimator);
      row.samples = task.samples;

      const auto t0 = std::chrono::steady_clock::now();
      try {
        const KnownEnvironment& env = get_env(task.seed);
        TrialConfig tc = cfg.base;
        tc.planner = task.planner;
        tc.n_robots = task.robots;
        tc.seed = task.seed;
        if (task.samples > 0) tc.pouct.n_samples = task.samples;
        const TrialResult res = run_trial(env, tc);
        row.cost_m = res.team_cost;
        row.steps = res.steps;
        row.success = res.success;
        if (!res.success) failures.fetch_add(1);
        if (cfg.log_steps) {
          char name[160];
          std::snprintf(name, sizeof(name), "%s/steps_%s_r%d_seed%llu.jsonl",
                        cfg.out_dir.c_str(), row.planner.c_str(), row.robots,
                        static_cast<unsigned long long>(row.seed));
          write_step_log(name, res);
        }
      } catch (const std::exception& e) {
        row.cost_m = -1.0;
        row.steps = 0;
        row.success = false;
        failures.fetch_add(1);
        std::lock_guard<std::mutex> lock(out_mutex);
        std::cerr << "trial " << trial_key(row.seed, row.planner, row.robots, row.samples)
                  << " failed: " << e.what() << "\n";
      }
      row.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
      std::lock_guard<std::mutex> lock(out_mutex);
      out << format_row(row) << "\n";
      out.flush();
    }
  };

  const int n_threads = std::max(1, cfg.parallelism);
  std::vector<std::thread> pool;
  for (int t = 0; t < n_threads - 1; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  out.close();

  // all requested trials must now have rows
  std::set<std::string> have;
  for (const CsvRow& r : read_csv(csv_path))
    have.insert(trial_key(r.seed, r.planner, r.robots, r.samples));
  for (const uint64_t seed : cfg.seeds)
    for (const PlannerKind planner : cfg.planners)
      for (const int robots : cfg.robot_counts) {
        const std::vector<int> samples =
            planner == PlannerKind::MrLsp ? cfg.sample_counts : std::vector<int>{0};
        for (const int s : samples)
          if (!have.count(trial_key(seed, planner_name(planner), robots, s)))
            return false;
      }
  return true;
}

std::string summarize(const std::string& csv_path) {
  const std::vector<CsvRow> rows = read_csv(csv_path);
  if (rows.empty()) throw EmptyTableError("summarize: no rows in " + csv_path);

  struct Group {
    double sum = 0.0;
    int n = 0;
    int failures = 0;
  };
  std::map<std::pair<std::string, int>, Group> groups;
  std::set<int> robot_counts;
  std::set<std::string> planners;
  for (const CsvRow& r : rows) {
    Group& g = groups[{r.planner, r.robots}];
    if (r.success) {
      g.sum += r.cost_m;
      g.n += 1;
    } else {
      g.failures += 1;
    }
    robot_counts.insert(r.robots);
    planners.insert(r.planner);
  }

  std::ostringstream out;
  out << "mean cost (m) over successful trials; failures in brackets\n";
  out << "planner";
  for (const int n : robot_counts) out << "\t" << n << "-robot";
  out << "\n";
  const std::vector<std::string> order = {"optimistic", "lsa-lsp", "mrlsp", "known"};
  std::vector<std::string> listed;
  for (const std::string& p : order)
    if (planners.count(p)) listed.push_back(p);
  for (const std::string& p : planners)
    if (std::find(order.begin(), order.end(), p) == order.end()) listed.push_back(p);

  for (const std::string& p : listed) {
    out << p;
    for (const int n : robot_counts) {
      const auto it = groups.find({p, n});
      out << "\t";
      if (it == groups.end() || it->second.n == 0) {
        out << "-";
      } else {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.2f", it->second.sum / it->second.n);
        out << buf;
      }
      if (it != groups.end() && it->second.failures > 0)
        out << " [" << it->second.failures << "]";
    }
    out << "\n";
  }

  if (planners.count("mrlsp") && planners.count("optimistic")) {
    out << "savings of mrlsp vs optimistic:";
    for (const int n : robot_counts) {
      const auto a = groups.find({"mrlsp", n});
      const auto b = groups.find({"optimistic", n});
      if (a == groups.end() || b == groups.end() || a->second.n == 0 || b->second.n == 0)
        continue;
      const double ma = a->second.sum / a->second.n;
      const double mb = b->second.sum / b->second.n;
      char buf[64];
      std::snprintf(buf, sizeof(buf), " %d-robot %.2f%%", n, 100.0 * (mb - ma) / mb);
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

int scatter_data(const std::string& csv_path, const std::string& planner_a,
                 const std::string& planner_b, int robots, const std::string& out_path) {
  const std::vector<CsvRow> rows = read_csv(csv_path);
  std::map<uint64_t, double> a, b;
  for (const CsvRow& r : rows) {
    if (r.robots != robots || !r.success) continue;
    if (r.planner == planner_a) a[r.seed] = r.cost_m;
    if (r.planner == planner_b) b[r.seed] = r.cost_m;
  }

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("scatter_data: cannot write " + out_path);
  out << "seed," << planner_a << "," << planner_b << "\n";
  int n = 0;
  std::set<uint64_t> all;
  for (const auto& [s, v] : a) all.insert(s);
  for (const auto& [s, v] : b) all.insert(s);
  for (const uint64_t s : all) {
    const auto ia = a.find(s), ib = b.find(s);
    if (ia == a.end() || ib == b.end()) {
      std::cerr << "scatter: seed " << s << " missing "
                << (ia == a.end() ? planner_a : planner_b) << " row, omitted\n";
      continue;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%llu,%.3f,%.3f", static_cast<unsigned long long>(s),
                  ia->second, ib->second);
    out << buf << "\n";
    ++n;
  }
  return n;
}

}  // namespace mrlsp
