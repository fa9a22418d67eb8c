#pragma once

#include <optional>
#include <set>
#include <vector>

#include "mlcbp/planner.h"
#include "mlcbp/strips.h"

namespace mlcbp {

struct CausalPair {
  GroundAction provider;
  GroundAction consumer;

  auto operator<=>(const CausalPair&) const = default;
  bool operator==(const CausalPair&) const = default;

  // "(pickup b) -> (stack b a)"
  std::string str() const;
};

using CausalPairSet = std::set<CausalPair>;

// Causal links of an executable plan: <a_i, a_j> for i < j when some atom q
// is added by a_i, required by a_j and not deleted by any action strictly
// between them. Pairs of identical ground actions are dropped. Throws
// ModelError when the plan does not execute from `init` under `model`.
CausalPairSet extract_causal_pairs(const Plan& plan, const DomainModel& model, const State& init);

struct GoalPlan {
  GroundAtom goal;
  SolveStatus status = SolveStatus::kUnsolvable;
  Plan plan;
};

struct SkeletalPlan {
  CausalPairSet pairs;
  // One entry per goal atom, in goal order.
  std::vector<GoalPlan> goal_plans;

  bool all_goals_reachable() const;
};

// Plans for each goal atom separately from the initial state under `model`
// and unions the causal pairs of the resulting plans. Goals the planner
// cannot reach contribute nothing.
SkeletalPlan generate_causal_pairs(const PlanningProblem& problem, const DomainModel& model,
                                   const SearchConfig& config = {});

}  // namespace mlcbp
