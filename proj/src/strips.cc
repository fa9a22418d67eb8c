#include "mlcbp/strips.h"

#include <algorithm>
#include <sstream>

namespace mlcbp {

namespace {

std::string sexpr(const std::string& head, const std::vector<std::string>& args) {
  std::string out = "(" + head;
  for (const auto& a : args) {
    out += ' ';
    out += a;
  }
  out += ')';
  return out;
}

bool is_variable(const std::string& term) { return !term.empty() && term[0] == '?'; }

State ground_list(const std::vector<LiftedAtom>& atoms, const Binding& binding,
                  const std::string& schema_name) {
  State out;
  for (const auto& atom : atoms) {
    GroundAtom g{atom.predicate, {}};
    g.args.reserve(atom.args.size());
    for (const auto& term : atom.args) {
      if (is_variable(term)) {
        auto it = binding.find(term);
        if (it == binding.end())
          throw ModelError("unbound parameter " + term + " in " + schema_name);
        g.args.push_back(it->second);
      } else {
        g.args.push_back(term);
      }
    }
    out.insert(std::move(g));
  }
  return out;
}

}  // namespace

std::string GroundAtom::str() const { return sexpr(predicate, args); }
std::string GroundAction::str() const { return sexpr(name, args); }
std::string LiftedAtom::str() const { return sexpr(predicate, args); }

std::string to_string(const State& state) {
  std::string out;
  for (const auto& atom : state) out += atom.str();
  return out;
}

std::string to_string(const Plan& plan) {
  std::string out;
  for (const auto& action : plan) {
    if (!out.empty()) out += ' ';
    out += action.str();
  }
  return out;
}

const ActionSchema* DomainModel::find_schema(const std::string& schema_name) const {
  for (const auto& s : schemas)
    if (s.name == schema_name) return &s;
  return nullptr;
}

const PredicateDecl* DomainModel::find_predicate(const std::string& pred) const {
  for (const auto& p : predicates)
    if (p.name == pred) return &p;
  return nullptr;
}

bool DomainModel::has_type(const std::string& type) const {
  return type == "object" || types.count(type) > 0;
}

bool DomainModel::is_subtype(const std::string& type, const std::string& super) const {
  if (super == "object") return true;
  std::string t = type;
  // Bounded walk; malformed cyclic hierarchies terminate.
  for (std::size_t hops = 0; hops <= types.size(); ++hops) {
    if (t == super) return true;
    auto it = types.find(t);
    if (it == types.end()) return false;
    t = it->second;
  }
  return false;
}

std::size_t DomainModel::atom_count() const {
  std::size_t n = 0;
  for (const auto& s : schemas) n += s.pre.size() + s.add.size() + s.del.size();
  return n;
}

void DomainModel::validate() const {
  std::set<std::string> names;
  for (const auto& s : schemas) {
    if (!names.insert(s.name).second) throw ModelError("duplicate action schema " + s.name);
    std::set<std::string> vars;
    for (const auto& p : s.params) {
      if (!has_type(p.type)) throw ModelError("unknown type " + p.type + " in " + s.name);
      vars.insert(p.name);
    }
    auto check = [&](const std::vector<LiftedAtom>& list) {
      for (const auto& atom : list) {
        const PredicateDecl* decl = find_predicate(atom.predicate);
        if (decl == nullptr)
          throw ModelError("undeclared predicate " + atom.predicate + " in " + s.name);
        if (decl->params.size() != atom.args.size())
          throw ModelError("arity mismatch for " + atom.str() + " in " + s.name);
        for (const auto& term : atom.args) {
          if (is_variable(term) && vars.count(term) == 0)
            throw ModelError("free variable " + term + " in " + s.name);
        }
      }
    };
    check(s.pre);
    check(s.add);
    check(s.del);
    for (const auto& a : s.add) {
      if (std::find(s.del.begin(), s.del.end(), a) != s.del.end())
        throw ModelError("atom " + a.str() + " both added and deleted by " + s.name);
    }
  }
}

std::vector<TypedName> PlanningProblem::all_objects(const DomainModel& model) const {
  std::vector<TypedName> out = objects;
  for (const auto& c : model.constants) {
    bool dup = std::any_of(out.begin(), out.end(),
                           [&](const TypedName& o) { return o.name == c.name; });
    if (!dup) out.push_back(c);
  }
  return out;
}

std::optional<std::string> PlanningProblem::object_type(const DomainModel& model,
                                                        const std::string& object) const {
  for (const auto& o : objects)
    if (o.name == object) return o.type;
  for (const auto& c : model.constants)
    if (c.name == object) return c.type;
  return std::nullopt;
}

GroundedAction ground_instantiate(const ActionSchema& schema, const Binding& binding,
                                  const DomainModel& model,
                                  const std::map<std::string, std::string>& object_types) {
  GroundedAction out;
  out.action.name = schema.name;
  for (const auto& p : schema.params) {
    auto it = binding.find(p.name);
    if (it == binding.end())
      throw ModelError("unbound parameter " + p.name + " in " + schema.name);
    if (!object_types.empty()) {
      auto t = object_types.find(it->second);
      if (t == object_types.end())
        throw ModelError("unknown object " + it->second + " for " + schema.name);
      if (!model.is_subtype(t->second, p.type))
        throw ModelError("type mismatch: " + it->second + " is " + t->second + ", " +
                         schema.name + " expects " + p.type);
    }
    out.action.args.push_back(it->second);
  }
  out.pre = ground_list(schema.pre, binding, schema.name);
  out.add = ground_list(schema.add, binding, schema.name);
  out.del = ground_list(schema.del, binding, schema.name);
  return out;
}

GroundedAction ground(const GroundAction& action, const DomainModel& model) {
  const ActionSchema* schema = model.find_schema(action.name);
  if (schema == nullptr) throw ModelError("unknown action schema " + action.name);
  if (schema->params.size() != action.args.size())
    throw ModelError("arity mismatch for " + action.str());
  Binding binding;
  for (std::size_t i = 0; i < action.args.size(); ++i)
    binding[schema->params[i].name] = action.args[i];
  return ground_instantiate(*schema, binding, model);
}

bool satisfies(const State& state, const State& goal) {
  return std::includes(state.begin(), state.end(), goal.begin(), goal.end());
}

bool applicable(const State& state, const GroundedAction& action) {
  return satisfies(state, action.pre);
}

bool applicable(const State& state, const GroundAction& action, const DomainModel& model) {
  return applicable(state, ground(action, model));
}

State apply(const State& state, const GroundedAction& action) {
  State out;
  std::set_difference(state.begin(), state.end(), action.del.begin(), action.del.end(),
                      std::inserter(out, out.end()));
  out.insert(action.add.begin(), action.add.end());
  return out;
}

State apply(const State& state, const GroundAction& action, const DomainModel& model,
            bool enforce) {
  GroundedAction g = ground(action, model);
  if (enforce && !applicable(state, g))
    throw ModelError("precondition violated for " + action.str());
  return mlcbp::apply(state, g);
}

ExecutionResult execute_plan(const PlanningProblem& problem, const Plan& plan,
                             const DomainModel& model) {
  ExecutionResult result;
  State state = problem.init;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const ActionSchema* schema = model.find_schema(plan[i].name);
    if (schema == nullptr || schema->params.size() != plan[i].args.size()) {
      result.failed_step = i;
      result.reason = "unknown action " + plan[i].str();
      result.final_state = std::move(state);
      return result;
    }
    GroundedAction g = ground(plan[i], model);
    if (!applicable(state, g)) {
      result.failed_step = i;
      std::ostringstream why;
      why << "step " << i << " " << plan[i].str() << ": unsatisfied";
      for (const auto& p : g.pre)
        if (state.count(p) == 0) why << ' ' << p.str();
      result.reason = why.str();
      result.final_state = std::move(state);
      return result;
    }
    state = mlcbp::apply(state, g);
  }
  result.final_state = std::move(state);
  result.failed_step = plan.size();
  if (!satisfies(result.final_state, problem.goal)) {
    std::ostringstream why;
    why << "goal not reached:";
    for (const auto& g : problem.goal)
      if (result.final_state.count(g) == 0) why << ' ' << g.str();
    result.reason = why.str();
    return result;
  }
  result.success = true;
  return result;
}

}  // namespace mlcbp
