#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlcbp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown schema, type mismatch, unbound parameter, malformed model.
class ModelError : public Error {
 public:
  using Error::Error;
};

struct GroundAtom {
  std::string predicate;
  std::vector<std::string> args;

  auto operator<=>(const GroundAtom&) const = default;
  bool operator==(const GroundAtom&) const = default;

  // PDDL form, e.g. "(on b a)".
  std::string str() const;
};

// Closed-world state: an absent atom is false.
using State = std::set<GroundAtom>;

struct GroundAction {
  std::string name;
  std::vector<std::string> args;

  auto operator<=>(const GroundAction&) const = default;
  bool operator==(const GroundAction&) const = default;

  std::string str() const;
};

using Plan = std::vector<GroundAction>;

std::string to_string(const State& state);
std::string to_string(const Plan& plan);

struct TypedName {
  std::string name;
  std::string type = "object";

  bool operator==(const TypedName&) const = default;
};

// An atom over schema variables ("?x") and/or domain constants.
struct LiftedAtom {
  std::string predicate;
  std::vector<std::string> args;

  auto operator<=>(const LiftedAtom&) const = default;
  bool operator==(const LiftedAtom&) const = default;

  std::string str() const;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<LiftedAtom> pre;
  std::vector<LiftedAtom> add;
  std::vector<LiftedAtom> del;

  bool operator==(const ActionSchema&) const = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> params;

  bool operator==(const PredicateDecl&) const = default;
};

struct DomainModel {
  std::string name;
  // child type -> parent type; every type ultimately reaches "object".
  std::map<std::string, std::string> types;
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<ActionSchema> schemas;
  // Fraction of atoms retained relative to the complete model. Metadata only.
  double completeness = 1.0;

  const ActionSchema* find_schema(const std::string& name) const;
  const PredicateDecl* find_predicate(const std::string& name) const;
  bool has_type(const std::string& type) const;
  bool is_subtype(const std::string& type, const std::string& super) const;

  // Total number of lifted atoms over all pre/add/del lists.
  std::size_t atom_count() const;

  // Throws ModelError on duplicate schemas, undeclared predicates, arity
  // mismatch, free variables or add/del overlap.
  void validate() const;

  bool operator==(const DomainModel&) const = default;
};

struct PlanningProblem {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  State init;
  State goal;

  // Problem objects plus domain constants.
  std::vector<TypedName> all_objects(const DomainModel& model) const;
  std::optional<std::string> object_type(const DomainModel& model,
                                         const std::string& object) const;
};

struct GroundedAction {
  GroundAction action;
  State pre;
  State add;
  State del;
};

using Binding = std::map<std::string, std::string>;

// Instantiates `schema` under `binding`. `object_types` maps objects to their
// declared type; pass an empty map to skip type checking.
GroundedAction ground_instantiate(const ActionSchema& schema, const Binding& binding,
                                  const DomainModel& model,
                                  const std::map<std::string, std::string>& object_types = {});

// Grounds a concrete action against its schema. No type checking.
GroundedAction ground(const GroundAction& action, const DomainModel& model);

bool applicable(const State& state, const GroundAction& action, const DomainModel& model);
bool applicable(const State& state, const GroundedAction& action);

// (state - del) + add. Throws ModelError when the action is not applicable
// and `enforce` is set.
State apply(const State& state, const GroundAction& action, const DomainModel& model,
            bool enforce = true);
State apply(const State& state, const GroundedAction& action);

struct ExecutionResult {
  bool success = false;
  State final_state;
  // Index of the failing step; equals plan size when the goal check failed.
  std::size_t failed_step = 0;
  std::string reason;

  explicit operator bool() const { return success; }
};

ExecutionResult execute_plan(const PlanningProblem& problem, const Plan& plan,
                             const DomainModel& model);

bool satisfies(const State& state, const State& goal);

}  // namespace mlcbp
