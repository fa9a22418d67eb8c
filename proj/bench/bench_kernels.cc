// Serial reference vs OpenMP path for the parallel kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "mlcbp/experiment.h"
#include "mlcbp/generators.h"
#include "mlcbp/mapping.h"
#include "mlcbp/miner.h"
#include "mlcbp/pddl_io.h"

using namespace mlcbp;

namespace {

const DomainModel& blocks() {
  static const DomainModel m = parse_domain(read_file(std::string(MLCBP_DOMAINS) + "/blocks.pddl"));
  return m;
}

const std::vector<CaseFile>& case_pool() {
  static const std::vector<CaseFile> cases = generate_cases(blocks(), {}, 200, 1, {}).cases;
  return cases;
}

const PlanningProblem& target() {
  static const PlanningProblem p = generate_problems({}, blocks(), 1, 2, "bench")[0];
  return p;
}

const SequenceDB& random_db() {
  static const SequenceDB db = [] {
    std::mt19937_64 rng(3);
    SequenceDB d;
    for (int i = 0; i < 400; ++i) {
      SequenceEntry e{i, {}};
      for (int k = 0; k < 30; ++k) e.sequence.push_back({"a" + std::to_string(rng() % 12), {}});
      d.entries.push_back(std::move(e));
    }
    return d;
  }();
  return db;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

void BM_BuildFragments(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(build_fragments(case_pool(), target(), blocks(), {}, mode(state)));
  state.SetLabel(mode(state) == Execution::kSerial ? "serial" : "parallel");
}

void BM_MineFrequent(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mine_frequent(random_db(), 3, mode(state)));
  state.SetLabel(mode(state) == Execution::kSerial ? "serial" : "parallel");
}

void BM_ExperimentSweep(benchmark::State& state) {
  ExperimentSpec spec;
  spec.domain = blocks();
  spec.num_problems = 10;
  spec.case_counts = {40};
  spec.completeness = {0.6, 1.0};
  spec.deltas = {5};
  spec.omit_timing = true;
  spec.exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(spec));
  state.SetLabel(mode(state) == Execution::kSerial ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_BuildFragments)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MineFrequent)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
