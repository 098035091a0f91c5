#include "mrlsp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mrlsp {

OccupancyGrid OccupancyGrid::filled(int w, int h, double res, CellState s) {
  if (w <= 0 || h <= 0 || res <= 0.0)
    throw std::invalid_argument("grid: width, height and resolution must be positive");
  OccupancyGrid g;
  g.width = w;
  g.height = h;
  g.resolution = res;
  g.cells.assign(static_cast<size_t>(w) * h, s);
  g.semantic.assign(static_cast<size_t>(w) * h, SemanticTag::None);
  return g;
}

int OccupancyGrid::cell_of(const Pose& p) const {
  int cx = static_cast<int>(std::floor(p.x / resolution));
  int cy = static_cast<int>(std::floor(p.y / resolution));
  cx = std::clamp(cx, 0, width - 1);
  cy = std::clamp(cy, 0, height - 1);
  return index(cx, cy);
}

PartialMap unknown_map_like(const OccupancyGrid& grid) {
  return OccupancyGrid::filled(grid.width, grid.height, grid.resolution,
                               CellState::Unknown);
}

namespace {

char cell_char(const KnownEnvironment& env, int idx, int goal_idx,
               const std::vector<int>& start_idx) {
  if (idx == goal_idx) return 'G';
  for (size_t i = 0; i < start_idx.size(); ++i)
    if (start_idx[i] == idx) return static_cast<char>('1' + i);
  const CellState s = env.grid.cells[idx];
  const SemanticTag t = env.grid.semantic[idx];
  if (s == CellState::Occupied) return t == SemanticTag::Clutter ? 'c' : '#';
  if (s == CellState::Unknown)
    throw std::invalid_argument("serialize: known environment contains Unknown cells");
  switch (t) {
    case SemanticTag::MarkedPath: return 'P';
    case SemanticTag::Hallway: return 'H';
    case SemanticTag::Room: return 'r';
    default: return '.';
  }
}

}  // namespace

std::string serialize_environment(const KnownEnvironment& env) {
  if (env.starts.empty() || env.starts.size() > 9)
    throw std::invalid_argument("serialize: need between 1 and 9 starts");
  const int goal_idx = env.grid.cell_of(env.goal);
  std::vector<int> start_idx;
  for (const Pose& s : env.starts) start_idx.push_back(env.grid.cell_of(s));

  char header[64];
  std::snprintf(header, sizeof(header), "%d %d %g", env.grid.width,
                env.grid.height, env.grid.resolution);
  std::string out(header);
  out.push_back('\n');
  for (int y = 0; y < env.grid.height; ++y) {
    for (int x = 0; x < env.grid.width; ++x)
      out.push_back(cell_char(env, env.grid.index(x, y), goal_idx, start_idx));
    out.push_back('\n');
  }
  return out;
}

KnownEnvironment parse_environment(const std::string& text) {
  std::istringstream in(text);
  int w = 0, h = 0;
  double res = 0.0;
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("parse: empty environment text");
  if (std::sscanf(header.c_str(), "%d %d %lf", &w, &h, &res) != 3)
    throw std::invalid_argument("parse: bad header line '" + header + "'");

  KnownEnvironment env;
  env.grid = OccupancyGrid::filled(w, h, res, CellState::Free);
  int goal_idx = -1;
  std::vector<int> start_idx(9, -1);

  std::string line;
  for (int y = 0; y < h; ++y) {
    if (!std::getline(in, line))
      throw std::invalid_argument("parse: missing row " + std::to_string(y));
    if (static_cast<int>(line.size()) < w)
      throw std::invalid_argument("parse: row " + std::to_string(y) + " too short");
    for (int x = 0; x < w; ++x) {
      const int idx = env.grid.index(x, y);
      CellState s = CellState::Free;
      SemanticTag t = SemanticTag::None;
      const char c = line[x];
      switch (c) {
        case '#': s = CellState::Occupied; break;
        case '.': break;
        case 'G': goal_idx = idx; break;
        case 'P': t = SemanticTag::MarkedPath; break;
        case 'H': t = SemanticTag::Hallway; break;
        case 'r': t = SemanticTag::Room; break;
        case 'c': s = CellState::Occupied; t = SemanticTag::Clutter; break;
        default:
          if (c >= '1' && c <= '9') {
            start_idx[c - '1'] = idx;
          } else {
            throw std::invalid_argument(std::string("parse: bad cell char '") + c + "'");
          }
      }
      env.grid.cells[idx] = s;
      env.grid.semantic[idx] = t;
    }
  }
  if (goal_idx < 0) throw std::invalid_argument("parse: no goal cell");
  env.goal = env.grid.center(goal_idx);
  for (int i = 0; i < 9; ++i) {
    if (start_idx[i] < 0) {
      for (int j = i + 1; j < 9; ++j)
        if (start_idx[j] >= 0)
          throw std::invalid_argument("parse: start digits must be contiguous from 1");
      break;
    }
    env.starts.push_back(env.grid.center(start_idx[i]));
  }
  if (env.starts.empty()) throw std::invalid_argument("parse: no start cell");
  return env;
}

KnownEnvironment load_environment(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open environment file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_environment(ss.str());
}

void save_environment(const KnownEnvironment& env, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write environment file " + path);
  f << serialize_environment(env);
}

}  // namespace mrlsp
