#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"
#include "mlcbp/degrade.h"
#include "mlcbp/generators.h"
#include "mlcbp/planner.h"

using namespace mlcbp;
using fixtures::atom;

TEST_CASE("the four-block problem is solved under the complete model") {
  auto f = fixtures::load_four_blocks();
  SolveResult r = solve(f.problem, f.complete);
  REQUIRE(r.solved());
  CHECK(execute_plan(f.problem, r.plan, f.complete).success);
}

TEST_CASE("a goal that already holds gives the empty plan") {
  auto f = fixtures::load_four_blocks();
  PlanningProblem p = f.problem;
  p.goal = {atom("(on c a)"), atom("(clear b)")};
  SolveResult r = solve(p, f.complete);
  CHECK(r.solved());
  CHECK(r.plan.empty());
  CHECK(relaxed_add_heuristic(p.init, p.goal, p, f.complete) == 0.0);
}

TEST_CASE("unreachable goals") {
  auto f = fixtures::load_four_blocks();
  DomainModel m = f.complete;
  for (auto& s : m.schemas)
    std::erase_if(s.add, [](const LiftedAtom& a) { return a.predicate == "on"; });
  CHECK(relaxed_add_heuristic(f.problem.init, f.problem.goal, f.problem, m) == kInfiniteCost);
  SolveResult r = solve(f.problem, m);
  CHECK(r.status == SolveStatus::kUnsolvable);
}

TEST_CASE("budget exhaustion is reported") {
  DomainModel m = fixtures::load_domain("blocks");
  GeneratorConfig g;
  g.min_size = g.max_size = 8;
  PlanningProblem p = generate_problems(g, m, 1, 4, "big")[0];
  SearchConfig config;
  config.max_expansions = 1;
  SolveResult r = solve(p, m, config);
  CHECK((r.status == SolveStatus::kBudgetExhausted || r.solved()));
  if (!r.solved()) CHECK(r.expansions <= 1);
}

TEST_CASE("grounding limit") {
  DomainModel m = fixtures::load_domain("blocks");
  auto f = fixtures::load_four_blocks();
  CHECK_THROWS_AS(GroundTask(f.problem, m, 3), GroundingLimit);
}

TEST_CASE("solutions agree with a breadth-first oracle on small blocks problems") {
  DomainModel m = fixtures::load_domain("blocks");
  GeneratorConfig g;
  g.min_size = 2;
  g.max_size = 4;
  for (const auto& p : generate_problems(g, m, 40, 21, "bfs")) {
    auto optimal = oracle::bfs_length(p, m);
    REQUIRE(optimal.has_value());
    SolveResult r = solve(p, m);
    REQUIRE(r.solved());
    CHECK(execute_plan(p, r.plan, m).success);
    CHECK(r.plan.size() >= static_cast<std::size_t>(*optimal));
    double h = relaxed_add_heuristic(p.init, p.goal, p, m);
    CHECK(h <= 3.0 * *optimal);
    CHECK((h == 0.0) == satisfies(p.init, p.goal));
  }
}

TEST_CASE("plans under incomplete models execute under those models") {
  DomainModel m = fixtures::load_domain("blocks");
  auto problems = generate_problems({}, m, 10, 8, "inc");
  for (double c : {0.4, 0.6, 0.8}) {
    DomainModel d = degrade(m, {c, 2});
    for (const auto& p : problems) {
      SolveResult r = solve(p, d);
      if (r.solved()) CHECK(execute_plan(p, r.plan, d).success);
    }
  }
}

TEST_CASE("search is deterministic and the goal-count heuristic also solves") {
  DomainModel m = fixtures::load_domain("driverlog");
  GeneratorConfig g;
  g.domain = "driverlog";
  for (const auto& p : generate_problems(g, m, 5, 12, "dl")) {
    SolveResult a = solve(p, m);
    SolveResult b = solve(p, m);
    REQUIRE(a.solved());
    CHECK(a.plan == b.plan);
    SearchConfig gc;
    gc.heuristic = Heuristic::kGoalCount;
    SolveResult c = solve(p, m, gc);
    if (c.solved()) CHECK(execute_plan(p, c.plan, m).success);
  }
}
