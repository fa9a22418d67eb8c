#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "fixtures.h"
#include "mlcbp/experiment.h"

using namespace mlcbp;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.domain = fixtures::load_domain("blocks");
  spec.generator.max_size = 5;
  spec.num_problems = 6;
  spec.case_counts = {5, 10};
  spec.completeness = {0.6, 1.0};
  spec.deltas = {2};
  spec.seeds = {1, 2};
  spec.omit_timing = true;
  return spec;
}

std::string csv(const ExperimentResult& r) {
  std::ostringstream out;
  write_csv(out, r.rows());
  return out.str();
}

}  // namespace

TEST_CASE("one row per setting and problem, sorted") {
  ExperimentSpec spec = small_spec();
  ExperimentResult r = run_experiment(spec);
  CHECK(r.records.size() == 2u * 6u * 2u * 2u * 1u);
  CHECK(r.cases_short == 0);
  auto rows = r.rows();
  CHECK(std::is_sorted(rows.begin(), rows.end(), row_order));
  for (const auto& row : rows) {
    CHECK(row.cpu_millis == 0.0);
    CHECK(row.domain_name == "blocks");
  }
  CHECK(rows.front().problem_id == "s1-p000");
}

TEST_CASE("full completeness solves everything and solved rows are sound") {
  ExperimentResult r = run_experiment(small_spec());
  for (const auto& rec : r.records) {
    if (rec.row.completeness == 1.0) CHECK(rec.row.solved);
    if (rec.assembly_returned) CHECK(rec.assembly_valid);
    if (rec.plan) CHECK(rec.valid_under_incomplete);
    if (rec.row.solved) CHECK(rec.plan.has_value());
  }
}

TEST_CASE("reruns and the serial path give identical CSV") {
  ExperimentSpec spec = small_spec();
  std::string a = csv(run_experiment(spec));
  CHECK(a == csv(run_experiment(spec)));
  spec.exec = Execution::kSerial;
  CHECK(a == csv(run_experiment(spec)));
}

TEST_CASE("timing is recorded unless omitted") {
  ExperimentSpec spec = small_spec();
  spec.omit_timing = false;
  spec.seeds = {1};
  ExperimentResult r = run_experiment(spec);
  double total = 0.0;
  for (const auto& row : r.rows()) total += row.cpu_millis;
  CHECK(total > 0.0);
}

TEST_CASE("artifacts re-validate from disk") {
  ExperimentSpec spec = small_spec();
  auto dir = std::filesystem::temp_directory_path() / "mlcbp_test_artifacts";
  std::filesystem::remove_all(dir);
  spec.artifacts = dir;
  ExperimentResult r = run_experiment(spec);
  for (const auto& rec : r.records) {
    auto plan_file = dir / plan_artifact(rec.row);
    REQUIRE(std::filesystem::exists(dir / problem_artifact(rec.row.problem_id)));
    if (!rec.plan) {
      CHECK_FALSE(std::filesystem::exists(plan_file));
      continue;
    }
    PlanningProblem p = parse_problem(read_file(dir / problem_artifact(rec.row.problem_id)), spec.domain);
    Plan plan = parse_plan(read_file(plan_file));
    CHECK(execute_plan(p, plan, spec.domain).success == rec.row.solved);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("given problems are used and renamed per seed") {
  ExperimentSpec spec = small_spec();
  auto f = fixtures::load_four_blocks();
  spec.problems = {f.problem};
  spec.seeds = {3};
  ExperimentResult r = run_experiment(spec);
  CHECK(r.records.size() == 2u * 2u);
  CHECK(r.records[0].row.problem_id == "s3-p000");
}

TEST_CASE("invalid specs are rejected") {
  ExperimentSpec spec = small_spec();
  spec.deltas.clear();
  CHECK_THROWS_AS(run_experiment(spec), Error);
  spec = small_spec();
  spec.completeness = {1.2};
  CHECK_THROWS_AS(run_experiment(spec), Error);
  spec = small_spec();
  spec.deltas = {0};
  CHECK_THROWS_AS(run_experiment(spec), Error);
  spec = small_spec();
  spec.num_problems = 0;
  CHECK_THROWS_AS(run_experiment(spec), Error);
}
