#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mlcbp/parallel.h"
#include "mlcbp/pddl_io.h"
#include "mlcbp/strips.h"

namespace mlcbp {

// Case object -> problem object. Injective.
using ObjectMapping = std::map<std::string, std::string>;

std::string to_string(const ObjectMapping& mapping);

// How unary-predicate features restrict which problem objects a case object
// may map to.
enum class FeatureRule {
  kComparable,  // one feature set contains the other
  kEqual,       // identical feature sets
  kIgnore,      // types only
};

struct MappingOptions {
  FeatureRule feature_rule = FeatureRule::kComparable;
  // Search nodes before best_mapping settles for its incumbent.
  std::size_t node_budget = 200000;
};

struct MappingResult {
  ObjectMapping mapping;
  int score = 0;
  bool exact = true;
  std::size_t nodes = 0;
};

struct Fragment {
  Plan actions;
  std::string source_case;

  bool operator==(const Fragment&) const = default;
};

// Names of the unary predicates true of `object` in `init` or `goal`.
std::set<std::string> object_features(const State& init, const State& goal,
                                      const std::string& object);

// Every symbol occurring in the case that is not a domain constant, sorted.
std::vector<std::string> case_objects(const CaseFile& c, const DomainModel& model);

// Type and feature compatibility of one candidate pair.
bool compatible(const CaseFile& c, const std::string& case_object, const PlanningProblem& problem,
                const std::string& problem_object, const DomainModel& model, FeatureRule rule);

// Applies `mapping` to an atom; constants map to themselves. Returns false
// when some argument is neither mapped nor a constant.
bool map_atom(const GroundAtom& atom, const ObjectMapping& mapping, const DomainModel& model,
              GroundAtom& out);
bool map_action(const GroundAction& action, const ObjectMapping& mapping,
                const DomainModel& model, GroundAction& out);

// |init|_m ∩ problem.init| + |goal|_m ∩ problem.goal|. Atoms with an unmapped
// object never match.
int mapping_score(const CaseFile& c, const ObjectMapping& mapping, const PlanningProblem& problem,
                  const DomainModel& model);

// m* = argmax over compatible injective (partial) mappings of mapping_score.
// Exact branch and bound over case objects in name order. Among equal
// scores the lexicographically smallest assignment wins, where leaving an
// object unmapped sorts after every problem object.
MappingResult best_mapping(const CaseFile& c, const PlanningProblem& problem,
                           const DomainModel& model, const MappingOptions& options = {});

// Maximal runs of the mapped case plan whose actions mention only problem
// objects and constants.
std::vector<Fragment> extract_fragments(const CaseFile& c, const ObjectMapping& mapping,
                                        const PlanningProblem& problem, const DomainModel& model);

// best_mapping for every case; results are indexed like `cases`.
std::vector<MappingResult> map_cases(const std::vector<CaseFile>& cases,
                                     const PlanningProblem& problem, const DomainModel& model,
                                     const MappingOptions& options = {},
                                     Execution exec = Execution::kParallel);

// Fragments of every case under its m*, in case order.
std::vector<Fragment> build_fragments(const std::vector<CaseFile>& cases,
                                      const PlanningProblem& problem, const DomainModel& model,
                                      const MappingOptions& options = {},
                                      Execution exec = Execution::kParallel);

}  // namespace mlcbp
