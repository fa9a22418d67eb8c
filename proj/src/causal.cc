#include "mlcbp/causal.h"

namespace mlcbp {

std::string CausalPair::str() const { return provider.str() + " -> " + consumer.str(); }

CausalPairSet extract_causal_pairs(const Plan& plan, const DomainModel& model, const State& init) {
  std::vector<GroundedAction> steps;
  steps.reserve(plan.size());
  State state = init;
  for (const auto& action : plan) {
    steps.push_back(ground(action, model));
    if (!applicable(state, steps.back()))
      throw ModelError("plan not executable at " + action.str());
    state = mlcbp::apply(state, steps.back());
  }

  CausalPairSet pairs;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    for (const auto& q : steps[j].pre) {
      // Walk back from the consumer; stop at the first deleter of q.
      for (std::size_t i = j; i-- > 0;) {
        if (steps[i].add.count(q) && !(plan[i] == plan[j])) pairs.insert({plan[i], plan[j]});
        if (steps[i].del.count(q)) break;
      }
    }
  }
  return pairs;
}

bool SkeletalPlan::all_goals_reachable() const {
  for (const auto& g : goal_plans)
    if (g.status != SolveStatus::kSolved) return false;
  return true;
}

SkeletalPlan generate_causal_pairs(const PlanningProblem& problem, const DomainModel& model,
                                   const SearchConfig& config) {
  SkeletalPlan out;
  if (problem.goal.empty()) return out;
  GroundTask task(problem, model, config.max_ground_actions);
  for (const auto& goal : problem.goal) {
    GoalPlan entry;
    entry.goal = goal;
    SolveResult result = task.search(State{goal}, config);
    entry.status = result.status;
    if (result.solved()) {
      entry.plan = std::move(result.plan);
      CausalPairSet pairs = extract_causal_pairs(entry.plan, model, problem.init);
      out.pairs.insert(pairs.begin(), pairs.end());
    }
    out.goal_plans.push_back(std::move(entry));
  }
  return out;
}

}  // namespace mlcbp
