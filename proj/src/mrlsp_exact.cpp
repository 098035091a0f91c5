#include "mrlsp/mrlsp_exact.hpp"

#include <algorithm>

namespace mrlsp {

namespace {

double action_cost(const AbstractBelief& belief, const CollectiveAction& action,
                   const DistanceModel& model, const PropertyMap& props, int depth);

double best_cost(const AbstractBelief& belief, const DistanceModel& model,
                 const PropertyMap& props, int depth) {
  double best = kUnreachable;
  for (const CollectiveAction& a : enumerate_actions(belief, model)) {
    try {
      best = std::min(best, action_cost(belief, a, model, props, depth));
    } catch (const UnreachableAssignmentError&) {
    }
  }
  return best == kUnreachable ? kFailPenalty : best;
}

double action_cost(const AbstractBelief& belief, const CollectiveAction& action,
                   const DistanceModel& model, const PropertyMap& props, int depth) {
  const FirstOutcome first = first_outcome(belief, action, model, props);
  const double p = props.at(first.sigma_prime).p_success;

  double q = first.d_prime;
  if (p > 0.0) {
    const AbstractBelief b_s = transition(belief, action, Outcome::Success, first, model);
    q += p * success_terminal_cost(b_s, first, model, props);
  }
  if (p < 1.0) {
    const AbstractBelief b_f = transition(belief, action, Outcome::Failure, first, model);
    double v;
    if (b_f.unexplored.empty())
      v = kFailPenalty;
    else if (depth <= 0)
      v = optimistic_bound(b_f, model);
    else
      v = best_cost(b_f, model, props, depth - 1);
    q += (1.0 - p) * v;
  }
  return q;
}

}  // namespace

double mrlsp_cost_exact(const AbstractBelief& belief, const CollectiveAction& action,
                        const DistanceModel& model, const PropertyMap& props,
                        int depth_limit) {
  if (!belief.goal_leading.empty())
    throw std::invalid_argument("mrlsp_cost_exact: goal-leading set must be empty");
  return action_cost(belief, action, model, props, depth_limit - 1);
}

std::pair<CollectiveAction, double> mrlsp_plan_exact(const AbstractBelief& belief,
                                                     const DistanceModel& model,
                                                     const PropertyMap& props,
                                                     int depth_limit) {
  std::pair<CollectiveAction, double> best{{}, kUnreachable};
  for (const CollectiveAction& a : enumerate_actions(belief, model)) {
    double q;
    try {
      q = mrlsp_cost_exact(belief, a, model, props, depth_limit);
    } catch (const UnreachableAssignmentError&) {
      continue;
    }
    if (q < best.second) best = {a, q};
  }
  if (best.first.assignment.empty())
    throw UnreachableAssignmentError("mrlsp_plan_exact: no evaluable action");
  return best;
}

}  // namespace mrlsp
