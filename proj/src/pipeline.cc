#include "mlcbp/pipeline.h"

namespace mlcbp {

const char* to_string(PlanSource source) {
  switch (source) {
    case PlanSource::kNone: return "none";
    case PlanSource::kAssembly: return "assembly";
    case PlanSource::kSkeletalConcat: return "skeletal-concat";
    case PlanSource::kGoalAgenda: return "goal-agenda";
  }
  return "?";
}

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::kSkeletal: return "skeletal";
    case Stage::kMining: return "mining";
    case Stage::kAssembly: return "assembly";
  }
  return "?";
}

std::optional<Plan> plan_goal_agenda(const PlanningProblem& problem, const DomainModel& model,
                                     const SearchConfig& config) {
  Plan plan;
  PlanningProblem stage = problem;
  stage.goal.clear();
  for (const auto& goal : problem.goal) {
    stage.goal.insert(goal);
    if (satisfies(stage.init, stage.goal)) continue;
    SolveResult r = solve(stage, model, config);
    if (!r.solved()) return std::nullopt;
    for (const auto& a : r.plan) stage.init = mlcbp::apply(stage.init, a, model);
    plan.insert(plan.end(), r.plan.begin(), r.plan.end());
  }
  if (!execute_plan(problem, plan, model)) return std::nullopt;
  return plan;
}

PipelineResult run_pipeline_with_fragments(const PlanningProblem& problem,
                                           const DomainModel& incomplete,
                                           const std::vector<Fragment>& fragments,
                                           const PipelineOptions& options) {
  PipelineResult result;
  result.skeletal = generate_causal_pairs(problem, incomplete, options.search);
  result.num_fragments = fragments.size();
  result.frequent = mine_frequent(SequenceDB::from_fragments(fragments), options.delta, options.exec);
  result.assembly =
      concat_frag(problem, incomplete, result.skeletal.pairs, result.frequent, options.assembly);
  if (result.assembly.plan) {
    result.plan = result.assembly.plan;
    result.source = PlanSource::kAssembly;
    return result;
  }

  if (options.skeletal_fallback && result.skeletal.all_goals_reachable()) {
    Plan joined;
    for (const auto& g : result.skeletal.goal_plans)
      joined.insert(joined.end(), g.plan.begin(), g.plan.end());
    Plan trimmed = trim(joined, problem, incomplete);
    if (execute_plan(problem, trimmed, incomplete)) {
      result.plan = std::move(trimmed);
      result.source = PlanSource::kSkeletalConcat;
      return result;
    }
  }
  if (options.agenda_fallback && result.skeletal.all_goals_reachable()) {
    try {
      if (auto p = plan_goal_agenda(problem, incomplete, options.search)) {
        result.plan = std::move(p);
        result.source = PlanSource::kGoalAgenda;
        return result;
      }
    } catch (const GroundingLimit&) {
    }
  }

  if (!result.skeletal.all_goals_reachable()) {
    result.failed_stage = Stage::kSkeletal;
    result.detail = "goal not reachable under the incomplete model:";
    for (const auto& g : result.skeletal.goal_plans)
      if (g.status != SolveStatus::kSolved) result.detail += " " + g.goal.str();
  } else if (result.frequent.patterns.empty()) {
    result.failed_stage = Stage::kMining;
    result.detail = "no fragment reaches support " + std::to_string(options.delta) + " (" +
                    std::to_string(fragments.size()) + " fragments)";
  } else {
    result.failed_stage = Stage::kAssembly;
    result.detail = result.assembly.budget_exhausted ? "assembly search budget exhausted"
                                                     : "no fragment combination executes";
  }
  return result;
}

PipelineResult run_pipeline(const PlanningProblem& problem, const DomainModel& incomplete,
                            const std::vector<CaseFile>& cases, const PipelineOptions& options) {
  std::vector<Fragment> fragments =
      build_fragments(cases, problem, incomplete, options.mapping, options.exec);
  return run_pipeline_with_fragments(problem, incomplete, fragments, options);
}

}  // namespace mlcbp
