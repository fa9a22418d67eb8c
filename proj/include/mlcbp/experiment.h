#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mlcbp/generators.h"
#include "mlcbp/parallel.h"
#include "mlcbp/pddl_io.h"
#include "mlcbp/pipeline.h"
#include "mlcbp/strips.h"

namespace mlcbp {

struct ExperimentSpec {
  DomainModel domain;
  GeneratorConfig generator;
  // Test problems per seed. Ignored when `problems` is nonempty.
  int num_problems = 100;
  std::vector<PlanningProblem> problems;
  std::vector<int> case_counts = {40, 80, 120, 160, 200};
  std::vector<double> completeness = {0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<int> deltas = {5, 15, 25};
  std::vector<std::uint64_t> seeds = {1};
  SearchConfig search;
  MappingOptions mapping;
  AssemblyOptions assembly;
  bool omit_timing = false;
  // When set, problems and plans are written here for later re-validation.
  std::optional<std::filesystem::path> artifacts;
  Execution exec = Execution::kParallel;

  // Throws Error on empty lists or out-of-range values.
  void validate() const;
};

struct ExperimentRecord {
  ExperimentRow row;
  std::uint64_t seed = 0;
  std::optional<Plan> plan;
  PlanSource source = PlanSource::kNone;
  Stage failed_stage = Stage::kAssembly;
  // The plan executes to the goal under the incomplete model it was built with.
  bool valid_under_incomplete = false;
  // concat_frag produced a plan; it must then execute under the incomplete model.
  bool assembly_returned = false;
  bool assembly_valid = false;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;  // sorted like the CSV rows
  std::size_t cases_short = 0;            // case pools that fell short of max(case_counts)

  std::vector<ExperimentRow> rows() const;
};

// One record per (seed, case count, completeness, delta, problem). The case
// pool for each seed is generated once and each setting uses its prefix; the
// incomplete model is degrade(domain, {completeness, seed}). A row counts as
// solved only if its plan executes under the complete domain.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Relative path of a persisted plan inside the artifacts directory.
std::filesystem::path plan_artifact(const ExperimentRow& row);
std::filesystem::path problem_artifact(const std::string& problem_id);

// Row sort order: domain, case count, completeness, delta, problem id.
bool row_order(const ExperimentRow& a, const ExperimentRow& b);

}  // namespace mlcbp
