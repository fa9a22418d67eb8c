#include "mlcbp/mapping.h"

#include <algorithm>

namespace mlcbp {

namespace {

bool is_constant(const DomainModel& model, const std::string& symbol) {
  for (const auto& c : model.constants)
    if (c.name == symbol) return true;
  return false;
}

// Types that every occurrence position of `object` demands.
std::set<std::string> required_types(const CaseFile& c, const std::string& object,
                                     const DomainModel& model) {
  std::set<std::string> out;
  auto scan_atoms = [&](const State& atoms) {
    for (const auto& a : atoms) {
      const PredicateDecl* decl = model.find_predicate(a.predicate);
      if (decl == nullptr || decl->params.size() != a.args.size()) continue;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (a.args[i] == object) out.insert(decl->params[i].type);
    }
  };
  scan_atoms(c.init);
  scan_atoms(c.goal);
  for (const auto& action : c.plan) {
    const ActionSchema* schema = model.find_schema(action.name);
    if (schema == nullptr || schema->params.size() != action.args.size()) continue;
    for (std::size_t i = 0; i < action.args.size(); ++i)
      if (action.args[i] == object) out.insert(schema->params[i].type);
  }
  return out;
}

bool features_match(const std::set<std::string>& a, const std::set<std::string>& b,
                    FeatureRule rule) {
  switch (rule) {
    case FeatureRule::kIgnore: return true;
    case FeatureRule::kEqual: return a == b;
    case FeatureRule::kComparable:
      return std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
             std::includes(b.begin(), b.end(), a.begin(), a.end());
  }
  return false;
}

constexpr int kUnassigned = -2;
constexpr int kUnmapped = -1;

class MappingSearch {
 public:
  MappingSearch(const CaseFile& c, const PlanningProblem& problem, const DomainModel& model,
                const MappingOptions& options)
      : options_(options) {
    for (const auto& o : problem.objects) symbols_.push_back(o.name);
    std::sort(symbols_.begin(), symbols_.end());
    const std::size_t num_problem_objects = symbols_.size();
    for (const auto& k : model.constants)
      if (std::find(symbols_.begin(), symbols_.end(), k.name) == symbols_.end())
        symbols_.push_back(k.name);
    for (std::size_t i = 0; i < symbols_.size(); ++i) sym_index_[symbols_[i]] = static_cast<int>(i);

    vars_ = case_objects(c, model);
    std::map<std::string, int> var_index;
    for (std::size_t i = 0; i < vars_.size(); ++i) var_index[vars_[i]] = static_cast<int>(i);

    candidates_.resize(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      for (std::size_t p = 0; p < num_problem_objects; ++p)
        if (compatible(c, vars_[v], problem, symbols_[p], model, options.feature_rule))
          candidates_[v].push_back(static_cast<int>(p));
    }

    auto intern_pred = [&](const std::string& name) {
      auto [it, inserted] = pred_index_.emplace(name, static_cast<int>(pred_index_.size()));
      return it->second;
    };
    auto add_problem = [&](const State& atoms, int list) {
      for (const auto& a : atoms) {
        std::vector<int> key{intern_pred(a.predicate)};
        bool ok = true;
        for (const auto& arg : a.args) {
          auto it = sym_index_.find(arg);
          if (it == sym_index_.end()) {
            ok = false;
            break;
          }
          key.push_back(it->second);
        }
        if (!ok) continue;
        tables_[list][key[0]].push_back(key);
        exact_[list].insert(std::move(key));
      }
    };
    add_problem(problem.init, 0);
    add_problem(problem.goal, 1);

    auto add_case = [&](const State& atoms, int list) {
      for (const auto& a : atoms) {
        CaseAtom ca;
        ca.list = list;
        ca.pred = intern_pred(a.predicate);
        for (const auto& arg : a.args) {
          auto v = var_index.find(arg);
          if (v != var_index.end()) {
            ca.args.push_back(v->second);
            ca.vars.push_back(v->second);
          } else {
            ca.args.push_back(-(sym_index_.at(arg) + 1));
          }
        }
        std::sort(ca.vars.begin(), ca.vars.end());
        ca.vars.erase(std::unique(ca.vars.begin(), ca.vars.end()), ca.vars.end());
        atoms_.push_back(std::move(ca));
      }
    };
    add_case(c.init, 0);
    add_case(c.goal, 1);
  }

  MappingResult run() {
    assign_.assign(vars_.size(), kUnassigned);
    used_.assign(symbols_.size(), false);
    best_score_ = -1;
    nodes_ = 0;
    exhausted_ = false;
    recurse(0);
    MappingResult result;
    result.score = best_score_;
    result.exact = !exhausted_;
    result.nodes = nodes_;
    for (std::size_t v = 0; v < vars_.size(); ++v)
      if (best_[v] >= 0) result.mapping[vars_[v]] = symbols_[best_[v]];
    return result;
  }

 private:
  struct CaseAtom {
    int list = 0;
    int pred = 0;
    std::vector<int> args;  // >= 0: variable; < 0: fixed symbol -(s + 1)
    std::vector<int> vars;
  };

  int image(int arg) const { return arg >= 0 ? assign_[arg] : -arg - 1; }

  // Optimistic count of atoms that can still match.
  int bound() const {
    int total = 0;
    std::vector<int> key;
    for (const auto& a : atoms_) {
      bool complete = true;
      bool dead = false;
      for (int v : a.vars) {
        if (assign_[v] == kUnmapped) dead = true;
        if (assign_[v] == kUnassigned) complete = false;
      }
      if (dead) continue;
      if (complete) {
        key.assign(1, a.pred);
        for (int arg : a.args) key.push_back(image(arg));
        total += exact_[a.list].count(key) ? 1 : 0;
        continue;
      }
      auto table = tables_[a.list].find(a.pred);
      if (table == tables_[a.list].end()) continue;
      for (const auto& row : table->second) {
        bool fits = true;
        for (std::size_t i = 0; i < a.args.size(); ++i) {
          int img = a.args[i] >= 0 ? assign_[a.args[i]] : image(a.args[i]);
          if (img >= 0 && row[i + 1] != img) {
            fits = false;
            break;
          }
          if (img == kUnassigned && used_[row[i + 1]]) {
            fits = false;
            break;
          }
        }
        if (fits) {
          ++total;
          break;
        }
      }
    }
    return total;
  }

  void recurse(std::size_t v) {
    if (exhausted_) return;
    ++nodes_;
    const int b = bound();
    if (b <= best_score_) return;
    if (v == vars_.size()) {
      best_score_ = b;
      best_ = assign_;
      return;
    }
    if (nodes_ >= options_.node_budget && best_score_ >= 0) {
      exhausted_ = true;
      return;
    }
    for (int p : candidates_[v]) {
      if (used_[p]) continue;
      assign_[v] = p;
      used_[p] = true;
      recurse(v + 1);
      used_[p] = false;
      if (exhausted_) break;
    }
    if (!exhausted_) {
      assign_[v] = kUnmapped;
      recurse(v + 1);
    }
    assign_[v] = kUnassigned;
  }

  const MappingOptions& options_;
  std::vector<std::string> symbols_;
  std::map<std::string, int> sym_index_;
  std::map<std::string, int> pred_index_;
  std::vector<std::string> vars_;
  std::vector<std::vector<int>> candidates_;
  std::map<int, std::vector<std::vector<int>>> tables_[2];
  std::set<std::vector<int>> exact_[2];
  std::vector<CaseAtom> atoms_;

  std::vector<int> assign_;
  std::vector<bool> used_;
  std::vector<int> best_;
  int best_score_ = -1;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

std::string to_string(const ObjectMapping& mapping) {
  std::string out = "{";
  for (const auto& [from, to] : mapping) {
    if (out.size() > 1) out += ", ";
    out += from + "->" + to;
  }
  return out + "}";
}

std::set<std::string> object_features(const State& init, const State& goal,
                                      const std::string& object) {
  std::set<std::string> out;
  for (const State* s : {&init, &goal})
    for (const auto& a : *s)
      if (a.args.size() == 1 && a.args[0] == object) out.insert(a.predicate);
  return out;
}

std::vector<std::string> case_objects(const CaseFile& c, const DomainModel& model) {
  std::set<std::string> out;
  for (const State* s : {&c.init, &c.goal})
    for (const auto& a : *s)
      for (const auto& arg : a.args) out.insert(arg);
  for (const auto& action : c.plan)
    for (const auto& arg : action.args) out.insert(arg);
  std::vector<std::string> result;
  for (const auto& o : out)
    if (!is_constant(model, o)) result.push_back(o);
  return result;
}

bool compatible(const CaseFile& c, const std::string& case_object, const PlanningProblem& problem,
                const std::string& problem_object, const DomainModel& model, FeatureRule rule) {
  auto it = std::find_if(problem.objects.begin(), problem.objects.end(),
                         [&](const TypedName& o) { return o.name == problem_object; });
  if (it == problem.objects.end()) return false;
  for (const auto& t : required_types(c, case_object, model))
    if (!model.is_subtype(it->type, t)) return false;
  return features_match(object_features(c.init, c.goal, case_object),
                        object_features(problem.init, problem.goal, problem_object), rule);
}

bool map_atom(const GroundAtom& atom, const ObjectMapping& mapping, const DomainModel& model,
              GroundAtom& out) {
  out.predicate = atom.predicate;
  out.args.clear();
  for (const auto& arg : atom.args) {
    auto it = mapping.find(arg);
    if (it != mapping.end()) {
      out.args.push_back(it->second);
    } else if (is_constant(model, arg)) {
      out.args.push_back(arg);
    } else {
      return false;
    }
  }
  return true;
}

bool map_action(const GroundAction& action, const ObjectMapping& mapping,
                const DomainModel& model, GroundAction& out) {
  GroundAtom as_atom{action.name, action.args};
  GroundAtom mapped;
  if (!map_atom(as_atom, mapping, model, mapped)) return false;
  out = {std::move(mapped.predicate), std::move(mapped.args)};
  return true;
}

int mapping_score(const CaseFile& c, const ObjectMapping& mapping, const PlanningProblem& problem,
                  const DomainModel& model) {
  int score = 0;
  GroundAtom mapped;
  for (const auto& a : c.init)
    if (map_atom(a, mapping, model, mapped) && problem.init.count(mapped)) ++score;
  for (const auto& a : c.goal)
    if (map_atom(a, mapping, model, mapped) && problem.goal.count(mapped)) ++score;
  return score;
}

MappingResult best_mapping(const CaseFile& c, const PlanningProblem& problem,
                           const DomainModel& model, const MappingOptions& options) {
  MappingSearch search(c, problem, model, options);
  return search.run();
}

std::vector<Fragment> extract_fragments(const CaseFile& c, const ObjectMapping& mapping,
                                        const PlanningProblem& problem, const DomainModel& model) {
  std::set<std::string> targets;
  for (const auto& o : problem.all_objects(model)) targets.insert(o.name);
  std::vector<Fragment> out;
  Fragment current{{}, c.id};
  GroundAction mapped;
  for (const auto& action : c.plan) {
    bool inside = map_action(action, mapping, model, mapped);
    if (inside) {
      for (const auto& arg : mapped.args)
        if (!targets.count(arg)) inside = false;
    }
    if (inside) {
      current.actions.push_back(mapped);
    } else if (!current.actions.empty()) {
      out.push_back(std::move(current));
      current = Fragment{{}, c.id};
    }
  }
  if (!current.actions.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<MappingResult> map_cases(const std::vector<CaseFile>& cases,
                                     const PlanningProblem& problem, const DomainModel& model,
                                     const MappingOptions& options, Execution exec) {
  std::vector<MappingResult> results(cases.size());
  const long n = static_cast<long>(cases.size());
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) results[i] = best_mapping(cases[i], problem, model, options);
  } else {
    for (long i = 0; i < n; ++i) results[i] = best_mapping(cases[i], problem, model, options);
  }
  return results;
}

std::vector<Fragment> build_fragments(const std::vector<CaseFile>& cases,
                                      const PlanningProblem& problem, const DomainModel& model,
                                      const MappingOptions& options, Execution exec) {
  std::vector<std::vector<Fragment>> per_case(cases.size());
  const long n = static_cast<long>(cases.size());
  auto one = [&](long i) {
    MappingResult m = best_mapping(cases[i], problem, model, options);
    per_case[i] = extract_fragments(cases[i], m.mapping, problem, model);
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  std::vector<Fragment> out;
  for (auto& v : per_case)
    for (auto& f : v) out.push_back(std::move(f));
  return out;
}

}  // namespace mlcbp
