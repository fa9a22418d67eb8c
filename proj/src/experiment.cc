#include "mlcbp/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <tuple>

#include "mlcbp/degrade.h"
#include "mlcbp/mapping.h"

namespace mlcbp {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string completeness_tag(double c) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", c);
  return buf;
}

struct SeedData {
  std::uint64_t seed = 0;
  std::vector<PlanningProblem> problems;
  std::vector<CaseFile> cases;
  // [problem][case] fragments under that case's m*, and its mapping time.
  std::vector<std::vector<std::vector<Fragment>>> fragments;
  std::vector<std::vector<double>> mapping_millis;
  std::map<double, DomainModel> incomplete;
};

struct Task {
  std::size_t seed_index;
  std::size_t problem;
  int cases;
  double completeness;
  int delta;
};

}  // namespace

void ExperimentSpec::validate() const {
  if (case_counts.empty() || completeness.empty() || deltas.empty() || seeds.empty())
    throw Error("experiment: case counts, completeness, deltas and seeds must be nonempty");
  for (int k : case_counts)
    if (k < 0) throw Error("experiment: negative case count");
  for (double c : completeness)
    if (!(c >= 0.0 && c <= 1.0)) throw Error("experiment: completeness outside [0, 1]");
  for (int d : deltas)
    if (d < 1) throw Error("experiment: delta must be at least 1");
  if (problems.empty() && num_problems < 1) throw Error("experiment: no test problems");
}

bool row_order(const ExperimentRow& a, const ExperimentRow& b) {
  return std::tie(a.domain_name, a.num_cases, a.completeness, a.delta, a.problem_id) <
         std::tie(b.domain_name, b.num_cases, b.completeness, b.delta, b.problem_id);
}

std::filesystem::path problem_artifact(const std::string& problem_id) {
  return std::filesystem::path("problems") / (problem_id + ".pddl");
}

std::filesystem::path plan_artifact(const ExperimentRow& row) {
  std::string setting = "k" + std::to_string(row.num_cases) + "-c" +
                        completeness_tag(row.completeness) + "-d" + std::to_string(row.delta);
  return std::filesystem::path("plans") / setting / (row.problem_id + ".plan");
}

std::vector<ExperimentRow> ExperimentResult::rows() const {
  std::vector<ExperimentRow> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.row);
  return out;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const int max_cases = *std::max_element(spec.case_counts.begin(), spec.case_counts.end());
  ExperimentResult result;

  std::vector<SeedData> seeds;
  for (std::uint64_t seed : spec.seeds) {
    SeedData data;
    data.seed = seed;
    const std::string prefix = "s" + std::to_string(seed) + "-p";
    if (spec.problems.empty()) {
      data.problems = generate_problems(spec.generator, spec.domain, spec.num_problems,
                                        mix_seed(seed, 2), prefix);
    } else {
      data.problems = spec.problems;
      for (std::size_t i = 0; i < data.problems.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s%03zu", prefix.c_str(), i);
        data.problems[i].name = name;
      }
    }
    CaseGenReport pool =
        generate_cases(spec.domain, spec.generator, max_cases, mix_seed(seed, 1), spec.search);
    if (static_cast<int>(pool.cases.size()) < max_cases) ++result.cases_short;
    data.cases = std::move(pool.cases);
    for (double c : spec.completeness) data.incomplete[c] = degrade(spec.domain, {c, seed});

    // Mapping uses only types and constants, which degradation leaves
    // alone, so it is shared by every setting of this seed.
    const std::size_t np = data.problems.size();
    const std::size_t nc = data.cases.size();
    data.fragments.assign(np, std::vector<std::vector<Fragment>>(nc));
    data.mapping_millis.assign(np, std::vector<double>(nc, 0.0));
    const long pairs = static_cast<long>(np * nc);
    auto map_one = [&](long i) {
      const std::size_t p = static_cast<std::size_t>(i) / nc;
      const std::size_t k = static_cast<std::size_t>(i) % nc;
      auto start = Clock::now();
      MappingResult m = best_mapping(data.cases[k], data.problems[p], spec.domain, spec.mapping);
      data.fragments[p][k] =
          extract_fragments(data.cases[k], m.mapping, data.problems[p], spec.domain);
      data.mapping_millis[p][k] = millis_since(start);
    };
    if (spec.exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < pairs; ++i) map_one(i);
    } else {
      for (long i = 0; i < pairs; ++i) map_one(i);
    }
    seeds.push_back(std::move(data));
  }

  std::vector<Task> tasks;
  for (std::size_t s = 0; s < seeds.size(); ++s)
    for (std::size_t p = 0; p < seeds[s].problems.size(); ++p)
      for (int k : spec.case_counts)
        for (double c : spec.completeness)
          for (int d : spec.deltas) tasks.push_back({s, p, k, c, d});

  result.records.resize(tasks.size());
  auto run_one = [&](long i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    const SeedData& data = seeds[t.seed_index];
    const PlanningProblem& problem = data.problems[t.problem];
    const DomainModel& incomplete = data.incomplete.at(t.completeness);
    ExperimentRecord& rec = result.records[static_cast<std::size_t>(i)];
    rec.seed = data.seed;
    rec.row.domain_name = spec.domain.name;
    rec.row.num_cases = t.cases;
    rec.row.completeness = t.completeness;
    rec.row.delta = t.delta;
    rec.row.problem_id = problem.name;

    const std::size_t used = std::min<std::size_t>(static_cast<std::size_t>(t.cases),
                                                   data.cases.size());
    std::vector<Fragment> fragments;
    double millis = 0.0;
    for (std::size_t k = 0; k < used; ++k) {
      const auto& f = data.fragments[t.problem][k];
      fragments.insert(fragments.end(), f.begin(), f.end());
      millis += data.mapping_millis[t.problem][k];
    }
    PipelineOptions options;
    options.delta = t.delta;
    options.search = spec.search;
    options.mapping = spec.mapping;
    options.assembly = spec.assembly;
    options.exec = Execution::kSerial;
    auto start = Clock::now();
    PipelineResult r;
    try {
      r = run_pipeline_with_fragments(problem, incomplete, fragments, options);
    } catch (const Error& e) {
      r = PipelineResult{};
      r.failed_stage = Stage::kSkeletal;
      r.detail = e.what();
    }
    millis += millis_since(start);

    rec.source = r.source;
    rec.failed_stage = r.failed_stage;
    rec.assembly_returned = r.assembly.plan.has_value();
    if (r.assembly.plan)
      rec.assembly_valid = execute_plan(problem, *r.assembly.plan, incomplete).success;
    if (r.plan) {
      rec.valid_under_incomplete = execute_plan(problem, *r.plan, incomplete).success;
      rec.row.solved = execute_plan(problem, *r.plan, spec.domain).success;
      rec.row.plan_length = static_cast<int>(r.plan->size());
    }
    rec.plan = std::move(r.plan);
    rec.row.cpu_millis = spec.omit_timing ? 0.0 : millis;
  };
  const long n = static_cast<long>(tasks.size());
  if (spec.exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) run_one(i);
  } else {
    for (long i = 0; i < n; ++i) run_one(i);
  }

  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     return row_order(a.row, b.row);
                   });

  if (spec.artifacts) {
    const auto& dir = *spec.artifacts;
    for (const auto& data : seeds)
      for (const auto& p : data.problems) write_file(dir / problem_artifact(p.name), write_problem(p));
    for (const auto& rec : result.records)
      if (rec.plan) write_file(dir / plan_artifact(rec.row), write_plan(*rec.plan));
  }
  return result;
}

}  // namespace mlcbp
