#pragma once

#include <string>

#include "mlcbp/pddl_io.h"
#include "mlcbp/strips.h"

namespace fixtures {

inline std::string test_data(const std::string& rel) { return std::string(MLCBP_TEST_DATA) + "/" + rel; }
inline std::string domain_file(const std::string& name) {
  return std::string(MLCBP_DOMAINS) + "/" + name + ".pddl";
}

inline mlcbp::DomainModel load_domain(const std::string& name) {
  return mlcbp::parse_domain(mlcbp::read_file(domain_file(name)));
}

// Four-block example: complete and incomplete blocks models, the new problem and two cases.
struct FourBlocks {
  mlcbp::DomainModel complete;
  mlcbp::DomainModel incomplete;
  mlcbp::PlanningProblem problem;
  mlcbp::CaseFile p1;
  mlcbp::CaseFile p2;
};

inline FourBlocks load_four_blocks() {
  FourBlocks f;
  f.complete = mlcbp::parse_domain(mlcbp::read_file(test_data("four_blocks/complete.pddl")));
  f.incomplete = mlcbp::parse_domain(mlcbp::read_file(test_data("four_blocks/incomplete.pddl")));
  f.problem = mlcbp::parse_problem(mlcbp::read_file(test_data("four_blocks/problem.pddl")), f.complete);
  f.p1 = mlcbp::parse_case(mlcbp::read_file(test_data("four_blocks/p1.case")));
  f.p1.id = "p1";
  f.p2 = mlcbp::parse_case(mlcbp::read_file(test_data("four_blocks/p2.case")));
  f.p2.id = "p2";
  return f;
}

// "(pickup b) (stack b a)" -> plan.
inline mlcbp::Plan plan_of(const std::string& text) { return mlcbp::parse_plan(text); }

inline mlcbp::GroundAction act(const std::string& text) { return plan_of(text).at(0); }

inline mlcbp::GroundAtom atom(const std::string& text) {
  mlcbp::GroundAction a = act(text);
  return {a.name, a.args};
}

inline const char* kGoldenSolution =
    "(unstack c a) (putdown c) (pickup b) (stack b a) (pickup c) (stack c b) (pickup d) "
    "(stack d c)";
inline const char* kFragmentP1 =
    "(pickup b) (stack b a) (pickup c) (stack c b) (pickup d) (stack d c)";
inline const char* kFragmentP2 =
    "(unstack b c) (putdown b) (unstack c a) (putdown c) (pickup b) (stack b a) (pickup c) "
    "(stack c b)";
inline const char* kCommonPattern = "(pickup b) (stack b a) (pickup c) (stack c b)";

}  // namespace fixtures
