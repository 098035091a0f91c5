#include "mrlsp/lsp.hpp"

#include <algorithm>

namespace mrlsp {

namespace {

// Memoized continuation values G(anchor, remaining-set): expected cost to
// finish from a subgoal centroid with the given subgoals still unexplored.
struct LspDp {
  const DistanceModel& model;
  std::vector<SubgoalId> ids;  // ascending
  std::vector<double> p, rs, min_re;
  std::vector<std::vector<double>> s2s;
  std::vector<double> memo;
  std::vector<uint8_t> seen;

  LspDp(const AbstractBelief& belief, const PropertyMap& props, const DistanceModel& m)
      : model(m), ids(belief.unexplored) {
    const int k = static_cast<int>(ids.size());
    if (k < 1 || k > 9)
      throw std::invalid_argument("lsp_cost: need between 1 and 9 unexplored subgoals");
    p.resize(k);
    rs.resize(k);
    min_re.resize(k);
    s2s.assign(k, std::vector<double>(k));
    for (int j = 0; j < k; ++j) {
      const SubgoalProperties& pr = props.at(ids[j]);
      p[j] = pr.p_success;
      rs[j] = pr.success_cost;
      min_re[j] = std::min(pr.success_cost, pr.exploration_cost);
      for (int l = 0; l < k; ++l) s2s[j][l] = model.between(ids[j], ids[l]);
    }
    memo.assign(static_cast<size_t>(k) << k, 0.0);
    seen.assign(static_cast<size_t>(k) << k, 0);
  }

  // expected remaining cost anchored at subgoal `anchor` with `mask` left
  double continuation(int anchor, uint32_t mask) {
    if (mask == 0) return kFailPenalty;
    const size_t key = (static_cast<size_t>(anchor) << ids.size()) | mask;
    if (seen[key]) return memo[key];
    double best = kUnreachable;
    for (int j = 0; j < static_cast<int>(ids.size()); ++j) {
      if (!(mask & (1u << j))) continue;
      double q = s2s[anchor][j] + p[j] * rs[j];
      if (p[j] < 1.0)
        q += (1.0 - p[j]) * (min_re[j] + continuation(j, mask & ~(1u << j)));
      best = std::min(best, q);
    }
    seen[key] = 1;
    memo[key] = best;
    return best;
  }

  double first_cost(double d0, int j, uint32_t full_mask) {
    double q = d0 + p[j] * rs[j];
    if (p[j] < 1.0)
      q += (1.0 - p[j]) * (min_re[j] + continuation(j, full_mask & ~(1u << j)));
    return q;
  }
};

}  // namespace

std::pair<double, SubgoalId> lsp_cost(const AbstractBelief& belief, const PropertyMap& props,
                                      const DistanceModel& model) {
  if (belief.n_robots() != 1)
    throw std::invalid_argument("lsp_cost: belief must have exactly one robot");
  LspDp dp(belief, props, model);
  const int k = static_cast<int>(dp.ids.size());
  const uint32_t full = (1u << k) - 1;

  double best = kUnreachable;
  SubgoalId best_id = dp.ids.front();
  for (int j = 0; j < k; ++j) {
    const double d0 = belief_distance(model, belief, 0, dp.ids[j]);
    if (d0 == kUnreachable) continue;
    const double q = dp.first_cost(d0, j, full);
    if (q < best) {
      best = q;
      best_id = dp.ids[j];
    }
  }
  if (best == kUnreachable)
    throw UnreachableAssignmentError("lsp_cost: no subgoal reachable");
  return {best, best_id};
}

std::vector<std::vector<double>> lsp_constrained_matrix(const AbstractBelief& belief,
                                                        const PropertyMap& props,
                                                        const DistanceModel& model) {
  LspDp dp(belief, props, model);
  const int k = static_cast<int>(dp.ids.size());
  const uint32_t full = (1u << k) - 1;

  std::vector<std::vector<double>> out(belief.n_robots(), std::vector<double>(k));
  for (int i = 0; i < belief.n_robots(); ++i)
    for (int j = 0; j < k; ++j) {
      const double d0 = belief_distance(model, belief, i, dp.ids[j]);
      out[i][j] = d0 == kUnreachable ? kUnreachable : dp.first_cost(d0, j, full);
    }
  return out;
}

}  // namespace mrlsp
