#include "mlcbp/assembler.h"

#include <algorithm>

namespace mlcbp {

namespace {

// Longest k with suffix_k(a) == prefix_k(b).
std::size_t overlap(const Plan& a, const Plan& b) {
  for (std::size_t k = std::min(a.size(), b.size()); k > 0; --k) {
    if (std::equal(a.end() - static_cast<long>(k), a.end(), b.begin())) return k;
  }
  return 0;
}

bool contains(const Plan& plan, const GroundAction& action) {
  return std::find(plan.begin(), plan.end(), action) != plan.end();
}

std::optional<GroundedAction> try_ground(const GroundAction& action, const DomainModel& model) {
  const ActionSchema* schema = model.find_schema(action.name);
  if (schema == nullptr || schema->params.size() != action.args.size()) return std::nullopt;
  return ground(action, model);
}

class Assembler {
 public:
  Assembler(const PlanningProblem& problem, const DomainModel& model,
            const std::vector<Plan>& fragments, const AssemblyOptions& options)
      : problem_(problem), model_(model), fragments_(fragments), options_(options) {}

  AssemblyResult run(const CausalPairSet& pairs) {
    std::vector<bool> available(fragments_.size(), true);
    dfs(Plan{}, pairs, available);
    return std::move(result_);
  }

 private:
  bool dfs(const Plan& partial, const CausalPairSet& remaining, std::vector<bool>& available) {
    if (++result_.nodes > options_.max_nodes) {
      result_.budget_exhausted = true;
      return false;
    }
    if (remaining.empty()) {
      Plan trimmed = trim(partial, problem_, model_);
      if (execute_plan(problem_, trimmed, model_)) {
        result_.merged = partial;
        result_.plan = std::move(trimmed);
        return true;
      }
      return false;
    }
    // The child depends only on the fragment, so each is tried once per node.
    std::vector<bool> tried(fragments_.size(), false);
    for (const auto& pair : remaining) {
      for (std::size_t f = 0; f < fragments_.size(); ++f) {
        if (!available[f] || tried[f]) continue;
        const Plan& frag = fragments_[f];
        if (!contains(frag, pair.provider) && !contains(frag, pair.consumer)) continue;
        if (!share(partial, frag)) continue;
        tried[f] = true;
        Plan next = append(partial, frag);
        CausalPairSet rest = removelinks(next, remaining);
        available[f] = false;
        bool found = dfs(next, rest, available);
        available[f] = true;
        if (found) return true;
        if (result_.budget_exhausted) return false;
      }
    }
    return false;
  }

  const PlanningProblem& problem_;
  const DomainModel& model_;
  const std::vector<Plan>& fragments_;
  const AssemblyOptions& options_;
  AssemblyResult result_;
};

}  // namespace

bool share(const Plan& partial, const Plan& fragment) {
  if (partial.empty()) return true;
  return overlap(partial, fragment) > 0 || overlap(fragment, partial) > 0;
}

Plan append(const Plan& partial, const Plan& fragment) {
  if (partial.empty()) return fragment;
  const std::size_t at_end = overlap(partial, fragment);
  const std::size_t at_begin = overlap(fragment, partial);
  if (at_end == 0 && at_begin == 0) throw Error("append: plan and fragment share no actions");
  Plan out;
  if (at_end >= at_begin) {
    out = partial;
    out.insert(out.end(), fragment.begin() + static_cast<long>(at_end), fragment.end());
  } else {
    out.assign(fragment.begin(), fragment.end() - static_cast<long>(at_begin));
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

CausalPairSet removelinks(const Plan& partial, const CausalPairSet& pairs) {
  CausalPairSet out;
  for (const auto& pair : pairs) {
    auto first = std::find(partial.begin(), partial.end(), pair.provider);
    bool satisfied = first != partial.end() && std::find(first + 1, partial.end(), pair.consumer) !=
                                                   partial.end();
    if (!satisfied) out.insert(pair);
  }
  return out;
}

Plan trim(const Plan& partial, const PlanningProblem& problem, const DomainModel& model) {
  Plan plan = partial;
  for (bool removed = true; removed && !plan.empty();) {
    removed = false;
    State state = problem.init;
    for (std::size_t i = 0; i < plan.size(); ++i) {
      auto g = try_ground(plan[i], model);
      if (!g || !applicable(state, *g)) {
        plan.erase(plan.begin() + static_cast<long>(i));
        removed = true;
        break;
      }
      state = mlcbp::apply(state, *g);
    }
  }
  while (!plan.empty()) {
    auto g = try_ground(plan.back(), model);
    bool hits_goal = false;
    if (g) {
      for (const auto& d : g->del)
        if (problem.goal.count(d)) hits_goal = true;
    }
    if (!hits_goal) break;
    plan.pop_back();
  }
  return plan;
}

AssemblyResult concat_frag(const PlanningProblem& problem, const DomainModel& model,
                           const CausalPairSet& pairs, const std::vector<Plan>& fragments,
                           const AssemblyOptions& options) {
  Assembler assembler(problem, model, fragments, options);
  return assembler.run(pairs);
}

AssemblyResult concat_frag(const PlanningProblem& problem, const DomainModel& model,
                           const CausalPairSet& pairs, const FrequentFragmentSet& fragments,
                           const AssemblyOptions& options) {
  std::vector<Plan> plans;
  plans.reserve(fragments.patterns.size());
  for (const auto& p : fragments.patterns) plans.push_back(p.actions);
  return concat_frag(problem, model, pairs, plans, options);
}

}  // namespace mlcbp
