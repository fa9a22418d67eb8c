#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "mlcbp/strips.h"

namespace mlcbp {

class GroundingLimit : public Error {
 public:
  using Error::Error;
};

enum class Heuristic { kRelaxedAdd, kGoalCount };

struct SearchConfig {
  Heuristic heuristic = Heuristic::kRelaxedAdd;
  std::size_t max_expansions = 100000;
  std::size_t max_ground_actions = 2000000;
};

enum class SolveStatus { kSolved, kUnsolvable, kBudgetExhausted };

const char* to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kUnsolvable;
  Plan plan;
  std::size_t expansions = 0;

  bool solved() const { return status == SolveStatus::kSolved; }
};

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// Fully grounded view of a problem under one model. Only actions whose
// preconditions are reachable in the delete relaxation from the initial
// state are kept. Operators are sorted by ground action, which fixes the
// successor order during search.
class GroundTask {
 public:
  using Bits = std::vector<std::uint64_t>;

  struct Operator {
    GroundAction action;
    std::vector<int> pre;
    std::vector<int> add;
    std::vector<int> del;
  };

  GroundTask(const PlanningProblem& problem, const DomainModel& model,
             std::size_t max_ground_actions = SearchConfig{}.max_ground_actions);

  std::size_t num_facts() const { return facts_.size(); }
  const std::vector<Operator>& operators() const { return operators_; }
  const std::vector<GroundAtom>& facts() const { return facts_; }

  // -1 when the atom can never become true from the initial state.
  int fact_id(const GroundAtom& atom) const;

  Bits encode(const State& state) const;
  const Bits& initial_state() const { return init_; }

  // Sum of relaxed costs of `goal`; kInfiniteCost when some goal fact is
  // unreachable in the relaxation. Goal ids of -1 are unreachable.
  double relaxed_add(const Bits& state, const std::vector<int>& goal) const;

  // Greedy best-first search to `goal` from the initial state.
  SolveResult search(const State& goal, const SearchConfig& config) const;

 private:
  std::vector<GroundAtom> facts_;
  std::map<GroundAtom, int> index_;
  std::vector<Operator> operators_;
  std::vector<std::vector<int>> consumers_;  // fact -> operators with it in pre
  std::vector<int> no_pre_ops_;
  Bits init_;
};

// GBFS with lexicographic tie-breaking. The model is taken literally, so an
// incomplete model may admit plans that fail under the complete one. Every
// returned plan executes under `model`.
SolveResult solve(const PlanningProblem& problem, const DomainModel& model,
                  const SearchConfig& config = {});

// Additive delete-relaxation estimate of reaching `goal` from `state`.
// Objects come from `problem`; its init and goal are ignored.
double relaxed_add_heuristic(const State& state, const State& goal,
                             const PlanningProblem& problem, const DomainModel& model);

}  // namespace mlcbp
