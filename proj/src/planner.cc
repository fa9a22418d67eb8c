#include "mlcbp/planner.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <string_view>
#include <unordered_map>

namespace mlcbp {

namespace {

using Bits = GroundTask::Bits;

bool test(const Bits& b, int f) { return (b[f >> 6] >> (f & 63)) & 1u; }
void set_bit(Bits& b, int f) { b[f >> 6] |= std::uint64_t{1} << (f & 63); }
void clear_bit(Bits& b, int f) { b[f >> 6] &= ~(std::uint64_t{1} << (f & 63)); }

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::string_view view(reinterpret_cast<const char*>(b.data()), b.size() * sizeof(b[0]));
    return std::hash<std::string_view>{}(view);
  }
};

bool is_variable(const std::string& t) { return !t.empty() && t[0] == '?'; }

// Enumerates bindings of one schema, pruning as soon as a fully bound
// precondition is not in `reachable`.
class SchemaGrounder {
 public:
  SchemaGrounder(const ActionSchema& schema, const DomainModel& model,
                 const std::vector<TypedName>& objects, const std::set<GroundAtom>& reachable)
      : schema_(schema), reachable_(reachable) {
    candidates_.resize(schema.params.size());
    for (std::size_t p = 0; p < schema.params.size(); ++p) {
      for (const auto& o : objects)
        if (model.is_subtype(o.type, schema.params[p].type)) candidates_[p].push_back(o.name);
      std::sort(candidates_[p].begin(), candidates_[p].end());
    }
    // Preconditions become checkable once their last variable is bound.
    checks_.resize(schema.params.size() + 1);
    for (const auto& atom : schema.pre) {
      std::size_t last = 0;
      for (const auto& t : atom.args) {
        if (!is_variable(t)) continue;
        for (std::size_t p = 0; p < schema.params.size(); ++p)
          if (schema.params[p].name == t) last = std::max(last, p + 1);
      }
      checks_[last].push_back(&atom);
    }
  }

  template <typename Emit>
  void run(Emit&& emit) {
    binding_.clear();
    if (!ok(0)) return;
    recurse(0, emit);
  }

 private:
  bool ok(std::size_t level) const {
    for (const LiftedAtom* atom : checks_[level]) {
      GroundAtom g{atom->predicate, {}};
      for (const auto& t : atom->args) {
        if (is_variable(t)) {
          auto it = binding_.find(t);
          g.args.push_back(it->second);
        } else {
          g.args.push_back(t);
        }
      }
      if (reachable_.count(g) == 0) return false;
    }
    return true;
  }

  template <typename Emit>
  void recurse(std::size_t p, Emit& emit) {
    if (p == schema_.params.size()) {
      emit(binding_);
      return;
    }
    for (const auto& obj : candidates_[p]) {
      binding_[schema_.params[p].name] = obj;
      if (ok(p + 1)) recurse(p + 1, emit);
    }
    binding_.erase(schema_.params[p].name);
  }

  const ActionSchema& schema_;
  const std::set<GroundAtom>& reachable_;
  std::vector<std::vector<std::string>> candidates_;
  std::vector<std::vector<const LiftedAtom*>> checks_;
  Binding binding_;
};

}  // namespace

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return "solved";
    case SolveStatus::kUnsolvable: return "unsolvable";
    case SolveStatus::kBudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

GroundTask::GroundTask(const PlanningProblem& problem, const DomainModel& model,
                       std::size_t max_ground_actions) {
  const std::vector<TypedName> objects = problem.all_objects(model);

  // Relaxed reachability fixpoint.
  std::set<GroundAtom> reachable(problem.init.begin(), problem.init.end());
  std::vector<GroundedAction> grounded;
  std::set<GroundAction> seen;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& schema : model.schemas) {
      SchemaGrounder grounder(schema, model, objects, reachable);
      std::vector<GroundedAction> fresh;
      grounder.run([&](const Binding& binding) {
        GroundAction action{schema.name, {}};
        for (const auto& p : schema.params) action.args.push_back(binding.at(p.name));
        if (seen.count(action)) return;
        if (seen.size() >= max_ground_actions)
          throw GroundingLimit("more than " + std::to_string(max_ground_actions) +
                               " ground actions");
        seen.insert(action);
        fresh.push_back(ground_instantiate(schema, binding, model));
      });
      for (auto& g : fresh) {
        for (const auto& a : g.add)
          if (reachable.insert(a).second) changed = true;
        grounded.push_back(std::move(g));
      }
    }
  }

  for (const auto& atom : reachable) {
    index_.emplace(atom, static_cast<int>(facts_.size()));
    facts_.push_back(atom);
  }
  std::sort(grounded.begin(), grounded.end(),
            [](const GroundedAction& a, const GroundedAction& b) { return a.action < b.action; });
  consumers_.resize(facts_.size());
  for (auto& g : grounded) {
    Operator op;
    op.action = std::move(g.action);
    for (const auto& a : g.pre) op.pre.push_back(index_.at(a));
    for (const auto& a : g.add) op.add.push_back(index_.at(a));
    for (const auto& a : g.del) {
      auto it = index_.find(a);
      if (it != index_.end()) op.del.push_back(it->second);
    }
    const int id = static_cast<int>(operators_.size());
    for (int f : op.pre) consumers_[f].push_back(id);
    if (op.pre.empty()) no_pre_ops_.push_back(id);
    operators_.push_back(std::move(op));
  }
  init_ = encode(problem.init);
}

int GroundTask::fact_id(const GroundAtom& atom) const {
  auto it = index_.find(atom);
  return it == index_.end() ? -1 : it->second;
}

GroundTask::Bits GroundTask::encode(const State& state) const {
  Bits bits((facts_.size() + 63) / 64 + 1, 0);
  for (const auto& atom : state) {
    int f = fact_id(atom);
    if (f >= 0) set_bit(bits, f);
  }
  return bits;
}

double GroundTask::relaxed_add(const Bits& state, const std::vector<int>& goal) const {
  for (int g : goal)
    if (g < 0) return kInfiniteCost;
  constexpr double kInf = kInfiniteCost;
  std::vector<double> cost(facts_.size(), kInf);
  std::vector<int> unsatisfied(operators_.size());
  std::vector<double> op_cost(operators_.size(), 0.0);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (std::size_t f = 0; f < facts_.size(); ++f) {
    if (test(state, static_cast<int>(f))) {
      cost[f] = 0.0;
      queue.emplace(0.0, static_cast<int>(f));
    }
  }
  for (std::size_t o = 0; o < operators_.size(); ++o)
    unsatisfied[o] = static_cast<int>(operators_[o].pre.size());
  auto fire = [&](int o) {
    double c = op_cost[o] + 1.0;
    for (int f : operators_[o].add) {
      if (c < cost[f]) {
        cost[f] = c;
        queue.emplace(c, f);
      }
    }
  };
  for (int o : no_pre_ops_) fire(o);
  std::vector<bool> done(facts_.size(), false);
  while (!queue.empty()) {
    auto [c, f] = queue.top();
    queue.pop();
    if (done[f] || c > cost[f]) continue;
    done[f] = true;
    for (int o : consumers_[f]) {
      op_cost[o] += c;
      if (--unsatisfied[o] == 0) fire(o);
    }
  }
  double total = 0.0;
  for (int g : goal) {
    if (cost[g] == kInf) return kInf;
    total += cost[g];
  }
  return total;
}

SolveResult GroundTask::search(const State& goal, const SearchConfig& config) const {
  if (config.max_expansions == 0) throw Error("max_expansions must be positive");
  SolveResult result;
  std::vector<int> goal_ids;
  for (const auto& g : goal) goal_ids.push_back(fact_id(g));
  auto is_goal = [&](const Bits& s) {
    for (int g : goal_ids)
      if (g < 0 || !test(s, g)) return false;
    return true;
  };
  auto evaluate = [&](const Bits& s) -> double {
    if (config.heuristic == Heuristic::kGoalCount) {
      double n = 0;
      for (int g : goal_ids) {
        if (g < 0) return kInfiniteCost;
        if (!test(s, g)) n += 1;
      }
      return n;
    }
    return relaxed_add(s, goal_ids);
  };

  struct Node {
    Bits state;
    int parent;
    int op;
  };
  std::vector<Node> nodes;
  std::unordered_map<Bits, int, BitsHash> seen;
  auto extract = [&](int id) {
    Plan plan;
    for (int n = id; nodes[n].parent >= 0; n = nodes[n].parent)
      plan.push_back(operators_[nodes[n].op].action);
    std::reverse(plan.begin(), plan.end());
    return plan;
  };

  nodes.push_back({init_, -1, -1});
  seen.emplace(init_, 0);
  if (is_goal(init_)) {
    result.status = SolveStatus::kSolved;
    return result;
  }
  const double h0 = evaluate(init_);
  if (h0 == kInfiniteCost) {
    result.status = SolveStatus::kUnsolvable;
    return result;
  }
  // (h, insertion order, node); ties resolve to the earlier generated node.
  using Entry = std::tuple<double, std::uint64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t counter = 0;
  open.emplace(h0, counter++, 0);

  while (!open.empty()) {
    if (result.expansions >= config.max_expansions) {
      result.status = SolveStatus::kBudgetExhausted;
      return result;
    }
    const int id = std::get<2>(open.top());
    open.pop();
    ++result.expansions;
    const Bits state = nodes[id].state;
    for (std::size_t o = 0; o < operators_.size(); ++o) {
      const Operator& op = operators_[o];
      bool ok = true;
      for (int f : op.pre) {
        if (!test(state, f)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Bits next = state;
      for (int f : op.del) clear_bit(next, f);
      for (int f : op.add) set_bit(next, f);
      if (seen.count(next)) continue;
      const int child = static_cast<int>(nodes.size());
      nodes.push_back({next, id, static_cast<int>(o)});
      seen.emplace(std::move(next), child);
      if (is_goal(nodes[child].state)) {
        result.status = SolveStatus::kSolved;
        result.plan = extract(child);
        return result;
      }
      double hc = evaluate(nodes[child].state);
      if (hc == kInfiniteCost) continue;
      open.emplace(hc, counter++, child);
    }
  }
  result.status = SolveStatus::kUnsolvable;
  return result;
}

SolveResult solve(const PlanningProblem& problem, const DomainModel& model,
                  const SearchConfig& config) {
  GroundTask task(problem, model, config.max_ground_actions);
  SolveResult result = task.search(problem.goal, config);
  if (result.solved()) {
    ExecutionResult check = execute_plan(problem, result.plan, model);
    if (!check) throw Error("internal: planner returned an invalid plan: " + check.reason);
  }
  return result;
}

double relaxed_add_heuristic(const State& state, const State& goal,
                             const PlanningProblem& problem, const DomainModel& model) {
  PlanningProblem from_state = problem;
  from_state.init = state;
  GroundTask task(from_state, model);
  std::vector<int> ids;
  for (const auto& g : goal) ids.push_back(task.fact_id(g));
  return task.relaxed_add(task.initial_state(), ids);
}

}  // namespace mlcbp
