#pragma once

// Independent reference implementations used only by tests. These deliberately
// avoid the library's algorithmic code paths: brute-force relaxation instead
// of heaps, dense sampling instead of exact traversal, explicit enumeration
// instead of recursion with pruning.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "mrlsp/belief.hpp"
#include "mrlsp/grid.hpp"

namespace oracles {

using namespace mrlsp;

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- geodesic distances by exhaustive relaxation (no heap) ----
inline std::vector<double> relax_distances(const OccupancyGrid& g,
                                           const std::vector<uint8_t>& traversable,
                                           const std::vector<int>& sources) {
  std::vector<double> d(g.size(), kInf);
  for (const int s : sources) d[s] = 0.0;
  const double sq2 = std::sqrt(2.0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y = 0; y < g.height; ++y)
      for (int x = 0; x < g.width; ++x) {
        const int i = g.index(x, y);
        if (!traversable[i] || d[i] == kInf) continue;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = x + dx, ny = y + dy;
            if (!g.in_bounds(nx, ny)) continue;
            const int n = g.index(nx, ny);
            if (!traversable[n]) continue;
            if (dx != 0 && dy != 0 && !traversable[g.index(x + dx, y)] &&
                !traversable[g.index(x, y + dy)])
              continue;
            const double step = (dx != 0 && dy != 0) ? g.resolution * sq2 : g.resolution;
            if (d[i] + step < d[n] - 1e-15) {
              d[n] = d[i] + step;
              changed = true;
            }
          }
      }
  }
  return d;
}

// ---- visibility by dense segment sampling ----
inline bool sampled_visible(const OccupancyGrid& g, const Pose& from, int target) {
  const Pose to = g.center(target);
  const double len = distance(from, to);
  const int steps = std::max(2, static_cast<int>(len / (g.resolution / 64.0)));
  for (int s = 0; s <= steps; ++s) {
    const double f = static_cast<double>(s) / steps;
    const Pose p{from.x + (to.x - from.x) * f, from.y + (to.y - from.y) * f};
    // a point exactly on a lattice corner touches four cells without
    // crossing any interior; skip it
    const double rx = p.x / g.resolution, ry = p.y / g.resolution;
    if (std::abs(rx - std::round(rx)) < 1e-9 && std::abs(ry - std::round(ry)) < 1e-9)
      continue;
    const int c = g.cell_of(p);
    if (c == target) continue;
    if (g.cells[c] == CellState::Occupied) return false;
  }
  return true;
}

// per-cell sensing criterion recomputed from its definition
inline bool sampled_revealed(const OccupancyGrid& g, const Pose& pose, int idx,
                             double range_m, int n_rays) {
  const Pose c = g.center(idx);
  const double d = distance(pose, c);
  if (d > range_m) return false;
  if (idx == g.cell_of(pose)) return true;
  const double spacing = 2.0 * M_PI / n_rays;
  const double bearing = std::atan2(c.y - pose.y, c.x - pose.x);
  const double off = std::abs(bearing - std::round(bearing / spacing) * spacing);
  if (off > std::atan2(0.5 * g.resolution, d)) return false;
  return sampled_visible(g, pose, idx);
}

// ---- frontier component count by label propagation ----
inline int frontier_component_count(const PartialMap& map) {
  std::vector<int> label(map.size(), -1);
  auto is_frontier = [&](int x, int y) {
    if (map.at(x, y) != CellState::Free) return false;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (map.in_bounds(x + dx, y + dy) && map.at(x + dx, y + dy) == CellState::Unknown)
          return true;
      }
    return false;
  };
  int next = 0;
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x)
      if (is_frontier(x, y)) label[map.index(x, y)] = next++;
  // merge neighboring labels until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (int y = 0; y < map.height; ++y)
      for (int x = 0; x < map.width; ++x) {
        const int i = map.index(x, y);
        if (label[i] < 0) continue;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!map.in_bounds(x + dx, y + dy)) continue;
            const int n = map.index(x + dx, y + dy);
            if (label[n] >= 0 && label[n] < label[i]) {
              label[i] = label[n];
              changed = true;
            }
          }
      }
  }
  std::set<int> roots;
  for (int i = 0; i < map.size(); ++i)
    if (label[i] >= 0) roots.insert(label[i]);
  return static_cast<int>(roots.size());
}

// ---- single-robot expected cost by explicit ordering enumeration ----
// closed-form expectation of one exploration order, fail sentinel at the end
inline double lsp_ordering_cost(const DistanceModel& m, const PropertyMap& props,
                                double first_leg, const std::vector<SubgoalId>& order) {
  double expected = 0.0;
  double weight = 1.0;
  for (size_t k = 0; k < order.size(); ++k) {
    const SubgoalProperties& p = props.at(order[k]);
    const double d = k == 0 ? first_leg : m.between(order[k - 1], order[k]);
    const double min_re = std::min(p.success_cost, p.exploration_cost);
    expected += weight * (d + p.p_success * p.success_cost);
    if (p.p_success >= 1.0) {
      weight = 0.0;
      break;
    }
    expected += weight * (1.0 - p.p_success) * min_re;
    weight *= 1.0 - p.p_success;
  }
  expected += weight * kFailPenalty;
  return expected;
}

inline double lsp_bruteforce(const DistanceModel& m, const PropertyMap& props,
                             const std::vector<double>& first_legs,
                             std::vector<SubgoalId> ids, SubgoalId* best_first = nullptr) {
  std::sort(ids.begin(), ids.end());
  double best = kInf;
  do {
    const double leg = first_legs[m.index_of(ids.front())];
    if (leg == kInf) continue;
    const double q = lsp_ordering_cost(m, props, leg, ids);
    if (q < best) {
      best = q;
      if (best_first) *best_first = ids.front();
    }
  } while (std::next_permutation(ids.begin(), ids.end()));
  return best;
}

// ---- multi-robot expected cost by action-chain enumeration ----
// Self-contained re-derivation of the abstraction: states, the first-resolved
// subgoal, pose advancement, and the success terminal, evaluated over every
// fixed chain of collective actions (adaptivity collapses to chains because
// failure transitions are deterministic).
struct ChainRobot {
  int64_t anchor = -1;  // subgoal id or -1 = start
  int64_t target = -1;
  double progress = 0.0;
};

struct ChainState {
  std::vector<SubgoalId> su;
  std::vector<ChainRobot> robots;
};

inline double chain_dist(const DistanceModel& m, const ChainState& st, int robot,
                         SubgoalId sigma) {
  const ChainRobot& r = st.robots[robot];
  auto base = [&](SubgoalId s) {
    return r.anchor < 0 ? m.robot_to(robot, s) : m.between(static_cast<SubgoalId>(r.anchor), s);
  };
  if (r.target < 0 || r.progress <= 0.0) return base(sigma);
  const SubgoalId tgt = static_cast<SubgoalId>(r.target);
  if (sigma == tgt) return std::max(0.0, base(tgt) - r.progress);
  return std::min(r.progress + base(sigma),
                  std::max(0.0, base(tgt) - r.progress) + m.between(tgt, sigma));
}

inline double chain_value(const DistanceModel& m, const PropertyMap& props,
                          const ChainState& st, const std::vector<SubgoalId>& action);

inline std::vector<std::vector<SubgoalId>> chain_actions(const ChainState& st,
                                                         const DistanceModel& m) {
  const int n = static_cast<int>(st.robots.size());
  const int k = static_cast<int>(st.su.size());
  std::vector<std::vector<SubgoalId>> out;
  if (k >= n) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    // all ordered selections of n subgoals
    std::vector<SubgoalId> cur(n);
    std::vector<uint8_t> used(k, 0);
    auto rec = [&](auto&& self, int i) -> void {
      if (i == n) {
        out.push_back(cur);
        return;
      }
      for (int j = 0; j < k; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        cur[i] = st.su[j];
        self(self, i + 1);
        used[j] = 0;
      }
    };
    rec(rec, 0);
  } else {
    // every subgoal covered, the rest take their individually nearest one
    std::vector<SubgoalId> nearest(n);
    for (int i = 0; i < n; ++i) {
      double bd = kInf;
      for (const SubgoalId s : st.su) {
        const double d = chain_dist(m, st, i, s);
        if (d < bd) {
          bd = d;
          nearest[i] = s;
        }
      }
    }
    std::vector<int> subset;
    std::vector<SubgoalId> perm(st.su);
    std::sort(perm.begin(), perm.end());
    auto rec = [&](auto&& self, int start, int need) -> void {
      if (need == 0) {
        std::vector<SubgoalId> base_perm(perm);
        do {
          std::vector<SubgoalId> cur(nearest);
          for (int j = 0; j < k; ++j) cur[subset[j]] = base_perm[j];
          out.push_back(cur);
        } while (std::next_permutation(base_perm.begin(), base_perm.end()));
        return;
      }
      for (int i = start; i <= n - need; ++i) {
        subset.push_back(i);
        self(self, i + 1, need - 1);
        subset.pop_back();
      }
    };
    rec(rec, 0, k);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

inline double chain_best(const DistanceModel& m, const PropertyMap& props,
                         const ChainState& st) {
  if (st.su.empty()) return kFailPenalty;
  double best = kInf;
  for (const auto& a : chain_actions(st, m)) best = std::min(best, chain_value(m, props, st, a));
  return best == kInf ? kFailPenalty : best;
}

inline double chain_value(const DistanceModel& m, const PropertyMap& props,
                          const ChainState& st, const std::vector<SubgoalId>& action) {
  // first resolved subgoal
  int who = -1;
  SubgoalId sp = 0;
  double dprime = kInf;
  for (size_t i = 0; i < action.size(); ++i) {
    const SubgoalProperties& p = props.at(action[i]);
    const double d = chain_dist(m, st, static_cast<int>(i), action[i]);
    if (d == kInf) continue;
    const double t = d + std::min(p.success_cost, p.exploration_cost);
    if (t < dprime - 1e-15 ||
        (std::abs(t - dprime) <= 1e-15 && (who < 0 || action[i] < sp))) {
      dprime = t;
      sp = action[i];
      who = static_cast<int>(i);
    }
  }
  if (who < 0) return kInf;

  const SubgoalProperties& psp = props.at(sp);
  double value = dprime;

  if (psp.p_success > 0.0) {
    // success terminal: advanced robots, sp known to lead to the goal
    ChainState succ = st;
    succ.su.erase(std::remove(succ.su.begin(), succ.su.end(), sp), succ.su.end());
    for (size_t i = 0; i < action.size(); ++i) {
      const double cur = chain_dist(m, st, static_cast<int>(i), action[i]);
      const double remaining = std::max(0.0, cur - dprime);
      const ChainRobot& old = st.robots[i];
      const double direct = old.anchor < 0
                                ? m.robot_to(static_cast<int>(i), action[i])
                                : m.between(static_cast<SubgoalId>(old.anchor), action[i]);
      succ.robots[i].target = static_cast<int64_t>(action[i]);
      succ.robots[i].progress = std::max(0.0, direct - remaining);
    }
    double term = std::max(0.0, psp.success_cost -
                                    std::min(psp.success_cost, psp.exploration_cost));
    for (size_t i = 0; i < action.size(); ++i) {
      if (static_cast<int>(i) == who) continue;
      term = std::min(term, chain_dist(m, succ, static_cast<int>(i), sp) + psp.success_cost);
    }
    value += psp.p_success * term;
  }

  if (psp.p_success < 1.0) {
    ChainState fail = st;
    fail.su.erase(std::remove(fail.su.begin(), fail.su.end(), sp), fail.su.end());
    for (size_t i = 0; i < action.size(); ++i) {
      if (static_cast<int>(i) == who) {
        fail.robots[i] = ChainRobot{static_cast<int64_t>(sp), -1, 0.0};
        continue;
      }
      const double cur = chain_dist(m, st, static_cast<int>(i), action[i]);
      const double remaining = std::max(0.0, cur - dprime);
      const ChainRobot& old = st.robots[i];
      const double direct = old.anchor < 0
                                ? m.robot_to(static_cast<int>(i), action[i])
                                : m.between(static_cast<SubgoalId>(old.anchor), action[i]);
      fail.robots[i].target = static_cast<int64_t>(action[i]);
      fail.robots[i].progress = std::max(0.0, direct - remaining);
    }
    value += (1.0 - psp.p_success) * chain_best(m, props, fail);
  }
  return value;
}

inline double mrlsp_bruteforce(const DistanceModel& m, const PropertyMap& props,
                               int n_robots, const std::vector<SubgoalId>& su) {
  ChainState st;
  st.su = su;
  std::sort(st.su.begin(), st.su.end());
  st.robots.assign(n_robots, ChainRobot{});
  return chain_best(m, props, st);
}

// ---- assignment by permutation enumeration ----
inline double assignment_bruteforce(const std::vector<std::vector<double>>& cost,
                                    std::vector<int>* best_assign = nullptr) {
  const int n = static_cast<int>(cost.size());
  const int m = n == 0 ? 0 : static_cast<int>(cost[0].size());
  const int k = std::min(n, m);
  // choose which rows take columns (all rows when n <= m), all column orders
  std::vector<int> cols(m);
  std::iota(cols.begin(), cols.end(), 0);
  double best = kInf;
  std::vector<int> rows(n);
  std::iota(rows.begin(), rows.end(), 0);

  std::vector<int> row_subset;
  auto eval_rows = [&](const std::vector<int>& chosen_rows) {
    std::vector<int> perm(cols);
    std::sort(perm.begin(), perm.end());
    do {
      double total = 0.0;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        const double c = cost[chosen_rows[i]][perm[i]];
        if (c == kInf) ok = false;
        else total += c;
      }
      if (ok && total < best - 1e-12) {
        best = total;
        if (best_assign) {
          best_assign->assign(n, -1);
          for (int i = 0; i < k; ++i) (*best_assign)[chosen_rows[i]] = perm[i];
        }
      } else if (ok && best_assign && std::abs(total - best) <= 1e-12) {
        std::vector<int> cand(n, -1);
        for (int i = 0; i < k; ++i) cand[chosen_rows[i]] = perm[i];
        // prefer lexicographically smaller with -1 treated as largest
        for (int i = 0; i < n; ++i) {
          const int a = cand[i] < 0 ? m : cand[i];
          const int b = (*best_assign)[i] < 0 ? m : (*best_assign)[i];
          if (a != b) {
            if (a < b) *best_assign = cand;
            break;
          }
        }
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  };

  if (n <= m) {
    eval_rows(rows);
  } else {
    // every subset of rows of size m takes the columns
    auto rec = [&](auto&& self, int start, int need) -> void {
      if (need == 0) {
        eval_rows(row_subset);
        return;
      }
      for (int i = start; i <= n - need; ++i) {
        row_subset.push_back(i);
        self(self, i + 1, need - 1);
        row_subset.pop_back();
      }
    };
    rec(rec, 0, m);
  }
  return best;
}

// one-sided sign test: P(X >= wins) for X ~ Binomial(n, 1/2)
inline double sign_test_p(int wins, int n) {
  double p = 0.0;
  for (int k = wins; k <= n; ++k) {
    double logc = 0.0;
    for (int i = 0; i < k; ++i) logc += std::log(static_cast<double>(n - i) / (k - i));
    p += std::exp(logc - n * std::log(2.0));
  }
  return std::min(1.0, p);
}

}  // namespace oracles
