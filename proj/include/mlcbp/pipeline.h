#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlcbp/assembler.h"
#include "mlcbp/causal.h"
#include "mlcbp/mapping.h"
#include "mlcbp/miner.h"
#include "mlcbp/parallel.h"
#include "mlcbp/pddl_io.h"
#include "mlcbp/planner.h"

namespace mlcbp {

inline constexpr int kDefaultDelta = 15;

struct PipelineOptions {
  int delta = kDefaultDelta;
  SearchConfig search;
  MappingOptions mapping;
  AssemblyOptions assembly;
  // After assembly fails: concatenate the single-goal plans and trim.
  bool skeletal_fallback = true;
  // Then: plan goal by goal under the incomplete model, each stage keeping
  // the goals already reached.
  bool agenda_fallback = true;
  Execution exec = Execution::kParallel;
};

enum class PlanSource { kNone, kAssembly, kSkeletalConcat, kGoalAgenda };
enum class Stage { kSkeletal, kMining, kAssembly };

const char* to_string(PlanSource source);
const char* to_string(Stage stage);

struct PipelineResult {
  std::optional<Plan> plan;
  PlanSource source = PlanSource::kNone;
  // Meaningful when no plan was found.
  Stage failed_stage = Stage::kAssembly;
  std::string detail;

  SkeletalPlan skeletal;
  std::size_t num_fragments = 0;
  FrequentFragmentSet frequent;
  AssemblyResult assembly;
};

// Full case-based pipeline: causal pairs from the incomplete model, fragments
// from the mapped cases, frequent maximal fragments, then assembly.
PipelineResult run_pipeline(const PlanningProblem& problem, const DomainModel& incomplete,
                            const std::vector<CaseFile>& cases,
                            const PipelineOptions& options = {});

// Same, starting from fragments already extracted for this problem.
PipelineResult run_pipeline_with_fragments(const PlanningProblem& problem,
                                           const DomainModel& incomplete,
                                           const std::vector<Fragment>& fragments,
                                           const PipelineOptions& options = {});

// Goal-by-goal planning under `model`; nullopt if some stage fails.
std::optional<Plan> plan_goal_agenda(const PlanningProblem& problem, const DomainModel& model,
                                     const SearchConfig& config);

}  // namespace mlcbp
