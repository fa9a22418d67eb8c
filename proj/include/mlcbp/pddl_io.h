#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mlcbp/strips.h"

namespace mlcbp {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UnsupportedFeature : public Error {
 public:
  explicit UnsupportedFeature(const std::string& construct);
  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

// STRIPS subset of PDDL (:strips, :typing). Symbols are lower-cased.
DomainModel parse_domain(std::string_view text);
PlanningProblem parse_problem(std::string_view text, const DomainModel& domain);

std::string write_domain(const DomainModel& model);
std::string write_problem(const PlanningProblem& problem);

// A solved plan example <init, plan, goal>. `id` is not serialized; library
// readers fill it from the file stem.
struct CaseFile {
  std::string id;
  State init;
  State goal;
  Plan plan;
};

// Three sections: (:init ...) (:goal ...) (:plan ...). The plan must be
// nonempty. Action names are not checked here.
CaseFile parse_case(std::string_view text);
std::string write_case(const CaseFile& c);

// One "(name arg ...)" per line. ';' starts a comment.
Plan parse_plan(std::string_view text);
std::string write_plan(const Plan& plan);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

// Reads every *.case file in `dir`, sorted by file name.
std::vector<CaseFile> read_case_library(const std::filesystem::path& dir);
// Writes case_00000.case, case_00001.case, ... into `dir` (created if needed).
void write_case_library(const std::filesystem::path& dir, const std::vector<CaseFile>& cases);

struct ExperimentRow {
  std::string domain_name;
  int num_cases = 0;
  double completeness = 1.0;
  int delta = 1;
  std::string problem_id;
  bool solved = false;
  int plan_length = 0;
  double cpu_millis = 0.0;

  bool operator==(const ExperimentRow&) const = default;
};

inline constexpr std::string_view kCsvHeader =
    "domain,num_cases,completeness,delta,problem_id,solved,plan_length,cpu_millis";

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> parse_csv(std::string_view text);

}  // namespace mlcbp
