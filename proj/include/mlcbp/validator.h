#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mlcbp/pddl_io.h"
#include "mlcbp/strips.h"

namespace mlcbp {

struct ProblemOutcome {
  std::string id;
  bool solved = false;
  int length = 0;
  double cpu_millis = 0.0;
};

struct EvalReport {
  std::size_t n_total = 0;
  std::size_t n_correct = 0;
  double accuracy = 0.0;
  // Over correctly solved problems only; 0 when none.
  double mean_plan_length = 0.0;
  std::vector<ProblemOutcome> per_problem;
};

// A problem counts as correct when its solution exists and executes to the
// goal under `complete_model`. Throws std::invalid_argument on empty or
// misaligned input.
EvalReport evaluate(const std::vector<PlanningProblem>& problems,
                    const std::vector<std::optional<Plan>>& solutions,
                    const DomainModel& complete_model,
                    const std::vector<double>& cpu_millis = {});

}  // namespace mlcbp
