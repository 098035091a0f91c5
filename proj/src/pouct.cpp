#include "mrlsp/pouct.hpp"

#include <algorithm>
#include <cmath>

#include "mrlsp/rng.hpp"

namespace mrlsp {

namespace {

struct ActionStats {
  int n = 0;
  double q_mean = 0.0;
  bool resolved = false;  // first_outcome computed
  bool valid = true;
  FirstOutcome first;
  double p = 0.0;
};

// One search-tree node per belief along the failure chain. The rollout
// history per node holds the tried actions, visit counts and running means.
struct Node {
  AbstractBelief belief;
  std::vector<CollectiveAction> actions;
  std::vector<ActionStats> stats;
  std::vector<int> fail_child;  // node index per action, -1 until expanded
  int total = 0;
};

struct Search {
  const PropertyMap& props;
  const DistanceModel& model;
  const PouctParams& params;
  Rng rng;
  std::vector<Node> nodes;

  Search(const AbstractBelief& root, const PropertyMap& pr, const DistanceModel& m,
         const PouctParams& pa)
      : props(pr), model(m), params(pa), rng(pa.seed) {
    make_node(root);
  }

  int make_node(const AbstractBelief& b) {
    Node n;
    n.belief = b;
    n.actions = enumerate_actions(b, model);
    n.stats.resize(n.actions.size());
    n.fail_child.assign(n.actions.size(), -1);
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  // resolve the (deterministic) first outcome of an action at a node
  void resolve(Node& node, int a) {
    ActionStats& st = node.stats[a];
    if (st.resolved) return;
    st.resolved = true;
    try {
      st.first = first_outcome(node.belief, node.actions[a], model, props);
      st.p = props.at(st.first.sigma_prime).p_success;
    } catch (const UnreachableAssignmentError&) {
      st.valid = false;
    }
  }

  int select_action(Node& node) {
    // unvisited first, deterministic order
    for (size_t a = 0; a < node.actions.size(); ++a) {
      resolve(node, static_cast<int>(a));
      if (node.stats[a].valid && node.stats[a].n == 0) return static_cast<int>(a);
    }
    int best = -1;
    double best_score = kUnreachable;
    const double log_total = std::log(std::max(1, node.total));
    for (size_t a = 0; a < node.actions.size(); ++a) {
      const ActionStats& st = node.stats[a];
      if (!st.valid) continue;
      const double score = st.q_mean - params.c_explore * std::sqrt(log_total / st.n);
      if (score < best_score) {
        best_score = score;
        best = static_cast<int>(a);
      }
    }
    return best;
  }

  // one rollout from node; returns the root-relative sample value
  double simulate(int node_idx, double accrued, int depth) {
    const int a = select_action(nodes[node_idx]);
    if (a < 0) return accrued + kFailPenalty;

    resolve(nodes[node_idx], a);
    const ActionStats st = nodes[node_idx].stats[a];  // copy: nodes may grow below
    const double after = accrued + st.first.d_prime;

    double value;
    if (rng.uniform() < st.p) {
      const AbstractBelief b_s = transition(nodes[node_idx].belief, nodes[node_idx].actions[a],
                                            Outcome::Success, st.first, model);
      value = after + success_terminal_cost(b_s, st.first, model, props);
    } else {
      const AbstractBelief b_f = transition(nodes[node_idx].belief, nodes[node_idx].actions[a],
                                            Outcome::Failure, st.first, model);
      if (b_f.unexplored.empty()) {
        value = after + kFailPenalty;
      } else if (depth + 1 >= params.depth_limit) {
        value = after + optimistic_bound(b_f, model);
      } else if (nodes[node_idx].fail_child[a] < 0) {
        const int child = make_node(b_f);
        nodes[node_idx].fail_child[a] = child;
        value = after + optimistic_bound(b_f, model);
      } else {
        value = simulate(nodes[node_idx].fail_child[a], after, depth + 1);
      }
    }

    Node& node = nodes[node_idx];
    ActionStats& live = node.stats[a];
    live.n += 1;
    live.q_mean += (value - live.q_mean) / live.n;
    node.total += 1;
    return value;
  }
};

}  // namespace

PouctResult pouct_search(const AbstractBelief& belief, const PropertyMap& props,
                         const DistanceModel& model, const PouctParams& params) {
  if (params.n_samples < 1)
    throw std::invalid_argument("pouct: n_samples must be >= 1");
  Search search(belief, props, model, params);

  for (int s = 0; s < params.n_samples; ++s) search.simulate(0, 0.0, 0);

  const Node& root = search.nodes[0];
  int best = -1;
  for (size_t a = 0; a < root.actions.size(); ++a) {
    const ActionStats& st = root.stats[a];
    if (!st.valid || st.n == 0) continue;
    if (best < 0) {
      best = static_cast<int>(a);
      continue;
    }
    const ActionStats& bs = root.stats[best];
    if (st.q_mean < bs.q_mean ||
        (st.q_mean == bs.q_mean &&
         (st.n > bs.n || (st.n == bs.n && root.actions[a] < root.actions[best]))))
      best = static_cast<int>(a);
  }
  if (best < 0)
    throw UnreachableAssignmentError("pouct: no evaluable action at the root");

  PouctResult res;
  res.action = root.actions[best];
  res.root_value = root.stats[best].q_mean;
  res.root_visits = root.stats[best].n;
  res.samples_run = params.n_samples;
  return res;
}

CollectiveAction pouct_plan(const AbstractBelief& belief, const PropertyMap& props,
                            const DistanceModel& model, int n_samples, double c_explore,
                            int depth_limit, uint64_t seed) {
  const std::vector<CollectiveAction> actions = enumerate_actions(belief, model);
  if (actions.size() == 1) return actions.front();
  PouctParams p;
  p.n_samples = n_samples;
  p.c_explore = c_explore;
  p.depth_limit = depth_limit;
  p.seed = seed;
  return pouct_search(belief, props, model, p).action;
}

}  // namespace mrlsp
