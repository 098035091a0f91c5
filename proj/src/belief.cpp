#include "mrlsp/belief.hpp"

#include <algorithm>

namespace mrlsp {

std::vector<SubgoalId> AbstractBelief::candidate_ids() const {
  std::vector<SubgoalId> out;
  out.reserve(unexplored.size() + goal_leading.size());
  std::merge(unexplored.begin(), unexplored.end(), goal_leading.begin(),
             goal_leading.end(), std::back_inserter(out));
  return out;
}

AbstractBelief make_root_belief(std::vector<SubgoalId> unexplored, int n_robots,
                                uint64_t map_ref) {
  if (n_robots < 1) throw std::invalid_argument("belief: need at least one robot");
  std::sort(unexplored.begin(), unexplored.end());
  unexplored.erase(std::unique(unexplored.begin(), unexplored.end()), unexplored.end());
  AbstractBelief b;
  b.map_ref = map_ref;
  b.unexplored = std::move(unexplored);
  b.robots.assign(n_robots, RobotState{});
  return b;
}

namespace {

double anchored_distance(const DistanceModel& model, const RobotState& r, int robot,
                         SubgoalId sigma) {
  return r.anchor ? model.between(*r.anchor, sigma) : model.robot_to(robot, sigma);
}

}  // namespace

double belief_distance(const DistanceModel& model, const AbstractBelief& belief,
                       int robot, SubgoalId sigma) {
  const RobotState& r = belief.robots[robot];
  const double direct = anchored_distance(model, r, robot, sigma);
  if (!r.target || r.progress <= 0.0) return direct;
  const double to_target = anchored_distance(model, r, robot, *r.target);
  if (sigma == *r.target) return std::max(0.0, to_target - r.progress);
  const double backtrack = r.progress + direct;
  const double onward = std::max(0.0, to_target - r.progress) + model.between(*r.target, sigma);
  return std::min(backtrack, onward);
}

std::vector<CollectiveAction> enumerate_actions(const AbstractBelief& belief,
                                                const DistanceModel& model) {
  const std::vector<SubgoalId> ids = belief.candidate_ids();
  const int n = belief.n_robots();
  const int k = static_cast<int>(ids.size());
  if (k == 0) throw NoActionError("enumerate_actions: no subgoals available");

  std::vector<CollectiveAction> out;
  if (k >= n) {
    // injective assignments, lexicographic
    std::vector<SubgoalId> cur(n);
    std::vector<uint8_t> used(k, 0);
    auto rec = [&](auto&& self, int robot) -> void {
      if (robot == n) {
        out.push_back({cur});
        return;
      }
      for (int j = 0; j < k; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        cur[robot] = ids[j];
        self(self, robot + 1);
        used[j] = 0;
      }
    };
    rec(rec, 0);
    return out;
  }

  // scarcity: every subgoal covered, surplus robots take their nearest subgoal
  std::vector<SubgoalId> nearest(n);
  for (int i = 0; i < n; ++i) {
    double best = kUnreachable;
    SubgoalId best_id = ids.front();
    for (const SubgoalId s : ids) {
      const double d = belief_distance(model, belief, i, s);
      if (d < best) {
        best = d;
        best_id = s;
      }
    }
    nearest[i] = best_id;
  }

  // assign the k distinct subgoals to each robot subset, in every order
  std::vector<SubgoalId> cur(n);
  std::vector<int> subset;
  std::vector<SubgoalId> perm(ids);
  auto subsets = [&](auto&& self, int start, int need) -> void {
    if (need == 0) {
      std::sort(perm.begin(), perm.end());
      do {
        for (int i = 0; i < n; ++i) cur[i] = nearest[i];
        for (int j = 0; j < k; ++j) cur[subset[j]] = perm[j];
        out.push_back({cur});
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int i = start; i <= n - need; ++i) {
      subset.push_back(i);
      self(self, i + 1, need - 1);
      subset.pop_back();
    }
  };
  subsets(subsets, 0, k);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FirstOutcome first_outcome(const AbstractBelief& belief, const CollectiveAction& action,
                           const DistanceModel& model, const PropertyMap& props) {
  if (static_cast<int>(action.assignment.size()) != belief.n_robots())
    throw std::invalid_argument("first_outcome: assignment size != robot count");

  FirstOutcome best;
  double best_d = kUnreachable;
  for (int i = 0; i < belief.n_robots(); ++i) {
    const SubgoalId s = action.assignment[i];
    const auto it = props.find(s);
    if (it == props.end())
      throw std::invalid_argument("first_outcome: assigned subgoal has no properties");
    const double d = belief_distance(model, belief, i, s);
    if (d == kUnreachable) continue;
    const double resolve =
        d + std::min(it->second.success_cost, it->second.exploration_cost);
    if (resolve < best_d ||
        (resolve == best_d && (s < best.sigma_prime ||
                               (s == best.sigma_prime && i < best.robot)))) {
      best_d = resolve;
      best.sigma_prime = s;
      best.d_prime = resolve;
      best.robot = i;
    }
  }
  if (best.robot < 0)
    throw UnreachableAssignmentError("first_outcome: every assigned subgoal unreachable");
  return best;
}

AbstractBelief transition(const AbstractBelief& belief, const CollectiveAction& action,
                          Outcome outcome, const FirstOutcome& first,
                          const DistanceModel& model) {
  if (!std::binary_search(belief.unexplored.begin(), belief.unexplored.end(),
                          first.sigma_prime))
    throw std::invalid_argument("transition: sigma' not in the unexplored set");

  AbstractBelief next;
  next.map_ref = belief.map_ref;
  for (const SubgoalId s : belief.unexplored)
    if (s != first.sigma_prime) next.unexplored.push_back(s);
  next.goal_leading = belief.goal_leading;
  if (outcome == Outcome::Success) {
    next.goal_leading.push_back(first.sigma_prime);
    std::sort(next.goal_leading.begin(), next.goal_leading.end());
  }

  next.robots.resize(belief.n_robots());
  for (int i = 0; i < belief.n_robots(); ++i) {
    const RobotState& old = belief.robots[i];
    if (outcome == Outcome::Failure && i == first.robot) {
      next.robots[i] = RobotState{first.sigma_prime, std::nullopt, 0.0};
      continue;
    }
    const SubgoalId tgt = action.assignment[i];
    const double cur = belief_distance(model, belief, i, tgt);
    const double remaining = std::max(0.0, cur - first.d_prime);
    const double direct = anchored_distance(model, old, i, tgt);
    RobotState ns;
    ns.anchor = old.anchor;
    ns.target = tgt;
    ns.progress = std::max(0.0, direct - remaining);
    next.robots[i] = ns;
  }
  return next;
}

double success_terminal_cost(const AbstractBelief& belief_s, const FirstOutcome& first,
                             const DistanceModel& model, const PropertyMap& props) {
  if (belief_s.goal_leading.empty())
    throw std::invalid_argument("success_terminal_cost: S_g is empty");

  double best = kUnreachable;
  for (int i = 0; i < belief_s.n_robots(); ++i) {
    for (const SubgoalId s : belief_s.goal_leading) {
      const SubgoalProperties& p = props.at(s);
      double c;
      if (i == first.robot && s == first.sigma_prime) {
        c = std::max(0.0, p.success_cost -
                              std::min(p.success_cost, p.exploration_cost));
      } else {
        c = belief_distance(model, belief_s, i, s) + p.success_cost;
      }
      best = std::min(best, c);
    }
  }
  return best;
}

double optimistic_bound(const AbstractBelief& belief, const DistanceModel& model) {
  const std::vector<SubgoalId> ids = belief.candidate_ids();
  if (ids.empty()) return kFailPenalty;
  double best = kUnreachable;
  for (int i = 0; i < belief.n_robots(); ++i)
    for (const SubgoalId s : ids)
      best = std::min(best, belief_distance(model, belief, i, s) +
                                model.to_goal_optimistic(s));
  return best == kUnreachable ? kFailPenalty : best;
}

}  // namespace mrlsp
