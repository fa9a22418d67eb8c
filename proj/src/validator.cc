#include "mlcbp/validator.h"

#include <stdexcept>

namespace mlcbp {

EvalReport evaluate(const std::vector<PlanningProblem>& problems,
                    const std::vector<std::optional<Plan>>& solutions,
                    const DomainModel& complete_model, const std::vector<double>& cpu_millis) {
  if (problems.empty()) throw std::invalid_argument("evaluate: no problems");
  if (solutions.size() != problems.size())
    throw std::invalid_argument("evaluate: " + std::to_string(problems.size()) + " problems but " +
                                std::to_string(solutions.size()) + " solutions");
  if (!cpu_millis.empty() && cpu_millis.size() != problems.size())
    throw std::invalid_argument("evaluate: timing list misaligned");

  EvalReport report;
  report.n_total = problems.size();
  double length_sum = 0.0;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    ProblemOutcome outcome;
    outcome.id = problems[i].name;
    if (!cpu_millis.empty()) outcome.cpu_millis = cpu_millis[i];
    if (solutions[i]) {
      outcome.length = static_cast<int>(solutions[i]->size());
      outcome.solved = execute_plan(problems[i], *solutions[i], complete_model).success;
    }
    if (outcome.solved) {
      ++report.n_correct;
      length_sum += outcome.length;
    }
    report.per_problem.push_back(std::move(outcome));
  }
  report.accuracy = static_cast<double>(report.n_correct) / static_cast<double>(report.n_total);
  report.mean_plan_length = report.n_correct ? length_sum / static_cast<double>(report.n_correct) : 0.0;
  return report;
}

}  // namespace mlcbp
