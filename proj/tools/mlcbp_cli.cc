#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mlcbp/causal.h"
#include "mlcbp/degrade.h"
#include "mlcbp/experiment.h"
#include "mlcbp/generators.h"
#include "mlcbp/mapping.h"
#include "mlcbp/miner.h"
#include "mlcbp/pddl_io.h"
#include "mlcbp/pipeline.h"
#include "mlcbp/planner.h"
#include "mlcbp/validator.h"

namespace fs = std::filesystem;
using namespace mlcbp;
using json = nlohmann::json;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitPipelineFailure = 2;
constexpr int kExitInputError = 3;

struct Args {
  std::string domain;
  std::string incomplete_domain;
  std::string problem;
  std::string problems;
  std::string plans;
  std::string cases;
  std::string out;
  std::string artifacts;
  std::string generator = "blocks";
  int delta = kDefaultDelta;
  double completeness = 1.0;
  std::uint64_t seed = 1;
  std::size_t max_expansions = SearchConfig{}.max_expansions;
  int count = 0;
  int min_size = GeneratorConfig{}.min_size;
  int max_size = GeneratorConfig{}.max_size;
  int num_problems = 100;
  std::vector<int> case_counts = {40, 80, 120, 160, 200};
  std::vector<double> completeness_list = {0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<int> deltas = {5, 15, 25};
  std::vector<std::uint64_t> seeds = {1};
  bool omit_timing = false;
  bool serial = false;
};

DomainModel load_domain(const std::string& path) { return parse_domain(read_file(path)); }

PlanningProblem load_problem(const std::string& path, const DomainModel& model) {
  return parse_problem(read_file(path), model);
}

std::vector<fs::path> files_with_extension(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PlanningProblem> load_problem_dir(const fs::path& dir, const DomainModel& model) {
  std::vector<PlanningProblem> out;
  for (const auto& f : files_with_extension(dir, ".pddl")) {
    PlanningProblem p = load_problem(f.string(), model);
    p.name = f.stem().string();
    out.push_back(std::move(p));
  }
  return out;
}

SearchConfig search_config(const Args& a) {
  SearchConfig config;
  config.max_expansions = a.max_expansions;
  return config;
}

Execution execution(const Args& a) { return a.serial ? Execution::kSerial : Execution::kParallel; }

void emit(const Args& a, const std::string& text) {
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
}

GeneratorConfig generator_config(const Args& a) {
  GeneratorConfig g;
  g.domain = a.generator;
  g.min_size = a.min_size;
  g.max_size = a.max_size;
  return g;
}

int cmd_gen_cases(const Args& a) {
  DomainModel model = load_domain(a.domain);
  std::vector<PlanningProblem> sources;
  if (!a.problems.empty()) sources = load_problem_dir(a.problems, model);
  CaseGenReport report = generate_cases(model, generator_config(a), a.count, a.seed,
                                        search_config(a), a.problems.empty() ? nullptr : &sources);
  if (a.out.empty()) throw Error("gen-cases needs --out");
  write_case_library(a.out, report.cases);
  if (report.skipped > 0)
    std::cerr << "warning: skipped " << report.skipped << " unsolved source problems\n";
  if (static_cast<int>(report.cases.size()) < a.count)
    std::cerr << "warning: produced " << report.cases.size() << " of " << a.count << " cases\n";
  std::cout << report.cases.size() << " cases written to " << a.out << "\n";
  return kExitSolved;
}

int cmd_degrade(const Args& a) {
  DomainModel model = load_domain(a.domain);
  emit(a, write_domain(degrade(model, {a.completeness, a.seed})));
  return kExitSolved;
}

int cmd_skeletal(const Args& a) {
  DomainModel model = load_domain(a.incomplete_domain);
  PlanningProblem problem = load_problem(a.problem, model);
  SkeletalPlan s = generate_causal_pairs(problem, model, search_config(a));
  std::string text;
  for (const auto& p : s.pairs) text += p.str() + "\n";
  emit(a, text);
  for (const auto& g : s.goal_plans)
    if (g.status != SolveStatus::kSolved)
      std::cerr << "goal " << g.goal.str() << ": " << to_string(g.status) << "\n";
  return kExitSolved;
}

const DomainModel& mapping_domain(const Args& a, std::optional<DomainModel>& storage) {
  storage = load_domain(a.domain.empty() ? a.incomplete_domain : a.domain);
  return *storage;
}

int cmd_map(const Args& a) {
  std::optional<DomainModel> storage;
  const DomainModel& model = mapping_domain(a, storage);
  PlanningProblem problem = load_problem(a.problem, model);
  std::vector<CaseFile> cases = read_case_library(a.cases);
  std::vector<MappingResult> maps = map_cases(cases, problem, model, {}, execution(a));
  std::ostringstream out;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    out << cases[i].id << " score=" << maps[i].score << " " << to_string(maps[i].mapping)
        << (maps[i].exact ? "" : " (inexact)") << "\n";
    for (const auto& f : extract_fragments(cases[i], maps[i].mapping, problem, model))
      out << "  " << to_string(f.actions) << "\n";
  }
  emit(a, out.str());
  return kExitSolved;
}

int cmd_mine(const Args& a) {
  std::optional<DomainModel> storage;
  const DomainModel& model = mapping_domain(a, storage);
  PlanningProblem problem = load_problem(a.problem, model);
  std::vector<CaseFile> cases = read_case_library(a.cases);
  std::vector<Fragment> fragments = build_fragments(cases, problem, model, {}, execution(a));
  FrequentFragmentSet f = mine_frequent(SequenceDB::from_fragments(fragments), a.delta, execution(a));
  std::ostringstream out;
  for (const auto& p : f.patterns) out << p.support << "\t" << to_string(p.actions) << "\n";
  emit(a, out.str());
  return kExitSolved;
}

int cmd_solve(const Args& a) {
  DomainModel model = load_domain(a.incomplete_domain);
  PlanningProblem problem = load_problem(a.problem, model);
  std::vector<CaseFile> cases;
  if (!a.cases.empty()) cases = read_case_library(a.cases);
  PipelineOptions options;
  options.delta = a.delta;
  options.search = search_config(a);
  options.exec = execution(a);
  PipelineResult r = run_pipeline(problem, model, cases, options);
  if (r.plan) {
    emit(a, write_plan(*r.plan));
    std::cerr << "plan source: " << to_string(r.source) << "\n";
    return kExitSolved;
  }
  json report = {{"status", "failure"},
                 {"stage", to_string(r.failed_stage)},
                 {"detail", r.detail},
                 {"problem", problem.name},
                 {"causal_pairs", r.skeletal.pairs.size()},
                 {"fragments", r.num_fragments},
                 {"frequent_patterns", r.frequent.patterns.size()},
                 {"assembly_nodes", r.assembly.nodes}};
  std::cout << report.dump(2) << "\n";
  return kExitPipelineFailure;
}

int cmd_solve_classical(const Args& a) {
  DomainModel model = load_domain(a.domain);
  PlanningProblem problem = load_problem(a.problem, model);
  SolveResult r = solve(problem, model, search_config(a));
  if (!r.solved()) {
    json report = {{"status", "failure"},
                   {"stage", "search"},
                   {"detail", to_string(r.status)},
                   {"expansions", r.expansions}};
    std::cout << report.dump(2) << "\n";
    return kExitPipelineFailure;
  }
  emit(a, write_plan(r.plan));
  return kExitSolved;
}

int cmd_evaluate(const Args& a) {
  DomainModel model = load_domain(a.domain);
  std::vector<PlanningProblem> problems = load_problem_dir(a.problems, model);
  std::vector<std::optional<Plan>> solutions;
  for (const auto& p : problems) {
    fs::path plan_file = fs::path(a.plans) / (p.name + ".plan");
    if (fs::exists(plan_file)) {
      solutions.push_back(parse_plan(read_file(plan_file)));
    } else {
      solutions.push_back(std::nullopt);
    }
  }
  EvalReport r = evaluate(problems, solutions, model);
  json report = {{"n_total", r.n_total},
                 {"n_correct", r.n_correct},
                 {"accuracy", r.accuracy},
                 {"mean_plan_length", r.mean_plan_length}};
  for (const auto& o : r.per_problem)
    report["per_problem"].push_back({{"id", o.id}, {"solved", o.solved}, {"length", o.length}});
  emit(a, report.dump(2) + "\n");
  return kExitSolved;
}

int cmd_experiment(const Args& a) {
  ExperimentSpec spec;
  spec.domain = load_domain(a.domain);
  spec.generator = generator_config(a);
  spec.num_problems = a.num_problems;
  if (!a.problems.empty()) spec.problems = load_problem_dir(a.problems, spec.domain);
  spec.case_counts = a.case_counts;
  spec.completeness = a.completeness_list;
  spec.deltas = a.deltas;
  spec.seeds = a.seeds;
  spec.search = search_config(a);
  spec.omit_timing = a.omit_timing;
  spec.exec = execution(a);
  if (!a.artifacts.empty()) spec.artifacts = fs::path(a.artifacts);
  ExperimentResult result = run_experiment(spec);
  if (result.cases_short > 0)
    std::cerr << "warning: " << result.cases_short << " case pools fell short\n";
  std::ostringstream csv;
  write_csv(csv, result.rows());
  emit(a, csv.str());
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model-lite case-based planning with incomplete STRIPS models"};
  app.require_subcommand(1);
  Args a;

  auto add_search = [&](CLI::App* c) {
    c->add_option("--max-expansions", a.max_expansions, "planner expansion budget");
  };
  auto add_serial = [&](CLI::App* c) {
    c->add_flag("--serial", a.serial, "run kernels on the serial reference path");
  };

  auto* gen = app.add_subcommand("gen-cases", "solve generated or given problems into a case library");
  gen->add_option("--domain", a.domain, "complete domain")->required()->check(CLI::ExistingFile);
  gen->add_option("--problems", a.problems, "source problem directory")->check(CLI::ExistingDirectory);
  gen->add_option("--count", a.count, "number of cases")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", a.seed, "generator seed");
  gen->add_option("--generator", a.generator, "blocks | driverlog | depots");
  gen->add_option("--min-size", a.min_size);
  gen->add_option("--max-size", a.max_size);
  gen->add_option("--out", a.out, "output directory")->required();
  add_search(gen);

  auto* deg = app.add_subcommand("degrade", "remove a fraction of the model's atoms");
  deg->add_option("--domain", a.domain)->required()->check(CLI::ExistingFile);
  deg->add_option("--completeness", a.completeness)->required()->check(CLI::Range(0.0, 1.0));
  deg->add_option("--seed", a.seed);
  deg->add_option("--out", a.out);

  auto* skel = app.add_subcommand("skeletal", "print the causal pairs of the single-goal plans");
  skel->add_option("--incomplete-domain", a.incomplete_domain)->required()->check(CLI::ExistingFile);
  skel->add_option("--problem", a.problem)->required()->check(CLI::ExistingFile);
  skel->add_option("--out", a.out);
  add_search(skel);

  auto* map = app.add_subcommand("map", "best object mapping and fragments of every case");
  map->add_option("--domain", a.domain)->check(CLI::ExistingFile);
  map->add_option("--incomplete-domain", a.incomplete_domain)->check(CLI::ExistingFile);
  map->add_option("--problem", a.problem)->required()->check(CLI::ExistingFile);
  map->add_option("--cases", a.cases)->required()->check(CLI::ExistingDirectory);
  map->add_option("--out", a.out);
  add_serial(map);

  auto* mine = app.add_subcommand("mine", "frequent maximal fragments with their support");
  mine->add_option("--domain", a.domain)->check(CLI::ExistingFile);
  mine->add_option("--incomplete-domain", a.incomplete_domain)->check(CLI::ExistingFile);
  mine->add_option("--problem", a.problem)->required()->check(CLI::ExistingFile);
  mine->add_option("--cases", a.cases)->required()->check(CLI::ExistingDirectory);
  mine->add_option("--delta", a.delta)->check(CLI::PositiveNumber);
  mine->add_option("--out", a.out);
  add_serial(mine);

  auto* solve_cmd = app.add_subcommand("solve", "case-based planning under an incomplete model");
  solve_cmd->add_option("--incomplete-domain", a.incomplete_domain)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--problem", a.problem)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--cases", a.cases)->check(CLI::ExistingDirectory);
  solve_cmd->add_option("--delta", a.delta)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", a.out);
  add_search(solve_cmd);
  add_serial(solve_cmd);

  auto* classical = app.add_subcommand("solve-classical", "forward search under the given model");
  classical->add_option("--domain", a.domain)->required()->check(CLI::ExistingFile);
  classical->add_option("--problem", a.problem)->required()->check(CLI::ExistingFile);
  classical->add_option("--out", a.out);
  add_search(classical);

  auto* eval = app.add_subcommand("evaluate", "validate plans under the complete model");
  eval->add_option("--domain", a.domain)->required()->check(CLI::ExistingFile);
  eval->add_option("--problems", a.problems)->required()->check(CLI::ExistingDirectory);
  eval->add_option("--plans", a.plans)->required()->check(CLI::ExistingDirectory);
  eval->add_option("--out", a.out);

  auto* exp = app.add_subcommand("experiment", "sweep case counts, completeness and delta");
  exp->add_option("--domain", a.domain)->required()->check(CLI::ExistingFile);
  exp->add_option("--problems", a.problems, "test problems (default: generated)")
      ->check(CLI::ExistingDirectory);
  exp->add_option("--num-problems", a.num_problems)->check(CLI::PositiveNumber);
  exp->add_option("--generator", a.generator, "blocks | driverlog | depots");
  exp->add_option("--min-size", a.min_size);
  exp->add_option("--max-size", a.max_size);
  exp->add_option("--case-counts", a.case_counts)->delimiter(',');
  exp->add_option("--completeness", a.completeness_list)->delimiter(',');
  exp->add_option("--deltas", a.deltas)->delimiter(',');
  exp->add_option("--seeds", a.seeds)->delimiter(',');
  exp->add_flag("--omit-timing", a.omit_timing, "write 0 in cpu_millis for reproducible output");
  exp->add_option("--artifacts", a.artifacts, "directory for problems and plans");
  exp->add_option("--out", a.out, "CSV path (default: stdout)");
  add_search(exp);
  add_serial(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*gen) return cmd_gen_cases(a);
    if (*deg) return cmd_degrade(a);
    if (*skel) return cmd_skeletal(a);
    if (*map) {
      if (a.domain.empty() && a.incomplete_domain.empty())
        throw Error("map needs --domain or --incomplete-domain");
      return cmd_map(a);
    }
    if (*mine) {
      if (a.domain.empty() && a.incomplete_domain.empty())
        throw Error("mine needs --domain or --incomplete-domain");
      return cmd_mine(a);
    }
    if (*solve_cmd) return cmd_solve(a);
    if (*classical) return cmd_solve_classical(a);
    if (*eval) return cmd_evaluate(a);
    if (*exp) return cmd_experiment(a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
