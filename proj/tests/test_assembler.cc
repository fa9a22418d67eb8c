#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "mlcbp/assembler.h"
#include "mlcbp/causal.h"

using namespace mlcbp;
using fixtures::act;
using fixtures::plan_of;

namespace {

CausalPairSet example1_pairs() {
  return {{act("(pickup b)"), act("(stack b a)")},
          {act("(unstack c a)"), act("(stack c b)")},
          {act("(pickup d)"), act("(stack d c)")}};
}

const char* kMerged =
    "(unstack b c) (putdown b) (unstack c a) (putdown c) (pickup b) (stack b a) (pickup c) "
    "(stack c b) (pickup d) (stack d c)";

bool contains_run(const Plan& big, const Plan& small) {
  return std::search(big.begin(), big.end(), small.begin(), small.end()) != big.end();
}

}  // namespace

TEST_CASE("share") {
  Plan f1 = plan_of(fixtures::kFragmentP1), f2 = plan_of(fixtures::kFragmentP2);
  CHECK(share({}, f1));
  CHECK(share(f2, f1));
  CHECK(share(f1, f2));
  CHECK_FALSE(share(plan_of("(a) (b)"), plan_of("(c) (d)")));
  CHECK_FALSE(share(plan_of("(a) (b) (c)"), plan_of("(b)")));
}

TEST_CASE("append") {
  Plan f1 = plan_of(fixtures::kFragmentP1), f2 = plan_of(fixtures::kFragmentP2);
  CHECK(append(f2, f1) == plan_of(kMerged));
  CHECK(append(f1, f2) == plan_of(kMerged));
  CHECK(append({}, f1) == f1);
  Plan tail(f1.end() - 3, f1.end());
  CHECK(append(f1, tail) == f1);
  Plan head(f1.begin(), f1.begin() + 2);
  CHECK(append(f1, head) == f1);
  CHECK_THROWS_AS(append(plan_of("(a)"), plan_of("(b)")), Error);
  // Both ends overlap: the longer one wins, ties append at the end.
  CHECK(append(plan_of("(a) (b) (c)"), plan_of("(b) (c) (x) (a)")) == plan_of("(a) (b) (c) (x) (a)"));
  CHECK(append(plan_of("(a) (b) (c)"), plan_of("(c) (a)")) == plan_of("(a) (b) (c) (a)"));
  CHECK(append(plan_of("(a) (b) (c)"), plan_of("(c) (y) (a) (b)")) == plan_of("(c) (y) (a) (b) (c)"));
}

TEST_CASE("append keeps both inputs as runs") {
  std::mt19937_64 rng(6);
  auto random_plan = [&](std::size_t n) {
    Plan p;
    for (std::size_t i = 0; i < n; ++i) p.push_back({"a" + std::to_string(rng() % 3), {}});
    return p;
  };
  for (int t = 0; t < 2000; ++t) {
    Plan a = random_plan(1 + rng() % 6), b = random_plan(1 + rng() % 6);
    if (!share(a, b)) continue;
    Plan m = append(a, b);
    CHECK(contains_run(m, a));
    CHECK(contains_run(m, b));
    CHECK(m.size() < a.size() + b.size());
  }
}

TEST_CASE("removelinks") {
  CHECK(removelinks(plan_of(kMerged), example1_pairs()).empty());
  CHECK(removelinks({}, example1_pairs()) == example1_pairs());
  CausalPairSet one = {{act("(pickup b)"), act("(stack b a)")}};
  CHECK(removelinks(plan_of("(stack b a) (pickup b)"), one) == one);
  CHECK(removelinks(plan_of("(stack b a) (pickup b) (stack b a)"), one).empty());
}

TEST_CASE("trim") {
  auto f = fixtures::load_four_blocks();
  CHECK(trim(plan_of(kMerged), f.problem, f.incomplete) == plan_of(fixtures::kGoldenSolution));
  Plan sol = plan_of(fixtures::kGoldenSolution);
  CHECK(trim(sol, f.problem, f.complete) == sol);
  Plan extra = sol;
  extra.push_back(act("(unstack d c)"));
  CHECK(trim(extra, f.problem, f.complete) == sol);
  CHECK(trim({}, f.problem, f.complete).empty());
  // Unknown actions are treated as inapplicable.
  Plan junk = sol;
  junk.insert(junk.begin() + 2, act("(teleport b)"));
  CHECK(trim(junk, f.problem, f.complete) == sol);
}

TEST_CASE("concat_frag on the four-block problem") {
  auto f = fixtures::load_four_blocks();
  std::vector<Plan> frags = {plan_of(fixtures::kFragmentP2), plan_of(fixtures::kFragmentP1)};
  AssemblyResult r = concat_frag(f.problem, f.incomplete, example1_pairs(), frags);
  REQUIRE(r.plan);
  CHECK(*r.plan == plan_of(fixtures::kGoldenSolution));
  CHECK(r.merged == plan_of(kMerged));
  CHECK(execute_plan(f.problem, *r.plan, f.incomplete).success);
  CHECK(execute_plan(f.problem, *r.plan, f.complete).success);
}

TEST_CASE("no pairs and a goal that already holds gives the empty plan") {
  auto f = fixtures::load_four_blocks();
  PlanningProblem p = f.problem;
  p.goal = {fixtures::atom("(on c a)")};
  AssemblyResult r = concat_frag(p, f.complete, {}, std::vector<Plan>{});
  REQUIRE(r.plan);
  CHECK(r.plan->empty());
}

TEST_CASE("withholding the p2 fragment makes assembly fail") {
  auto f = fixtures::load_four_blocks();
  AssemblyResult r =
      concat_frag(f.problem, f.incomplete, example1_pairs(), std::vector<Plan>{plan_of(fixtures::kFragmentP1)});
  CHECK_FALSE(r.plan);
  CHECK_FALSE(r.budget_exhausted);
  CHECK(r.nodes >= 2);
}

TEST_CASE("a failing branch backtracks to the next one") {
  auto f = fixtures::load_four_blocks();
  // The first fragment covers every pair but cannot execute; the second
  // branch combines the real fragments.
  Plan decoy = plan_of("(unstack c a) (pickup b) (stack b a) (stack c b) (pickup d) (stack d c)");
  std::vector<Plan> frags = {decoy, plan_of(fixtures::kFragmentP2), plan_of(fixtures::kFragmentP1)};
  AssemblyResult r = concat_frag(f.problem, f.complete, example1_pairs(), frags);
  REQUIRE(r.plan);
  CHECK(execute_plan(f.problem, *r.plan, f.complete).success);
  CHECK(r.nodes > 2);
}

TEST_CASE("the node budget is honoured") {
  auto f = fixtures::load_four_blocks();
  AssemblyOptions options;
  options.max_nodes = 1;
  std::vector<Plan> frags = {plan_of(fixtures::kFragmentP2), plan_of(fixtures::kFragmentP1)};
  AssemblyResult r = concat_frag(f.problem, f.incomplete, example1_pairs(), frags, options);
  CHECK_FALSE(r.plan);
  CHECK(r.budget_exhausted);
}
