#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"
#include "mlcbp/causal.h"
#include "mlcbp/degrade.h"
#include "mlcbp/generators.h"

using namespace mlcbp;
using fixtures::act;
using fixtures::plan_of;

namespace {

std::set<std::pair<GroundAction, GroundAction>> as_pairs(const CausalPairSet& s) {
  std::set<std::pair<GroundAction, GroundAction>> out;
  for (const auto& p : s) out.insert({p.provider, p.consumer});
  return out;
}

}  // namespace

TEST_CASE("pickup then stack gives one pair") {
  auto f = fixtures::load_four_blocks();
  CausalPairSet s = extract_causal_pairs(plan_of("(pickup b) (stack b d)"), f.complete, f.problem.init);
  CHECK(s == CausalPairSet{{act("(pickup b)"), act("(stack b d)")}});
  CHECK(s.begin()->str() == "(pickup b) -> (stack b d)");
}

TEST_CASE("single actions and non-executable plans") {
  auto f = fixtures::load_four_blocks();
  CHECK(extract_causal_pairs(plan_of("(pickup b)"), f.complete, f.problem.init).empty());
  CHECK_THROWS_AS(extract_causal_pairs(plan_of("(pickup c)"), f.complete, f.problem.init), ModelError);
}

TEST_CASE("a three-step plan matches the triple enumeration") {
  auto f = fixtures::load_four_blocks();
  Plan p = plan_of("(unstack c a) (putdown c) (pickup a)");
  CHECK(as_pairs(extract_causal_pairs(p, f.complete, f.problem.init)) == oracle::causal_links(p));
}

TEST_CASE("four-block skeletal pairs") {
  auto f = fixtures::load_four_blocks();
  SkeletalPlan s = generate_causal_pairs(f.problem, f.incomplete);
  CHECK(s.all_goals_reachable());
  CHECK(s.pairs == CausalPairSet{{act("(pickup b)"), act("(stack b a)")},
                                 {act("(unstack c a)"), act("(stack c b)")},
                                 {act("(pickup d)"), act("(stack d c)")}});
  for (const auto& pair : s.pairs) {
    bool found = false;
    for (const auto& g : s.goal_plans)
      if (std::count(g.plan.begin(), g.plan.end(), pair.provider) &&
          std::count(g.plan.begin(), g.plan.end(), pair.consumer))
        found = true;
    CHECK(found);
  }
}

TEST_CASE("empty goal and unreachable goal atoms") {
  auto f = fixtures::load_four_blocks();
  PlanningProblem p = f.problem;
  p.goal.clear();
  CHECK(generate_causal_pairs(p, f.incomplete).pairs.empty());

  DomainModel m = f.incomplete;
  for (auto& s : m.schemas)
    if (s.name == "stack") std::erase_if(s.add, [](const LiftedAtom& a) { return a.predicate == "on"; });
  SkeletalPlan s = generate_causal_pairs(f.problem, m);
  CHECK_FALSE(s.all_goals_reachable());
  CHECK(s.pairs.empty());
  for (const auto& g : s.goal_plans) CHECK(g.status == SolveStatus::kUnsolvable);
}

TEST_CASE("causal links equal the last-provider enumeration on random plans") {
  auto f = fixtures::load_four_blocks();
  std::mt19937_64 rng(5);
  auto actions = oracle::blocks_actions({"a", "b", "c", "d"});
  for (int trial = 0; trial < 300; ++trial) {
    State s = f.problem.init;
    Plan p;
    for (std::size_t len = 1 + rng() % 8; p.size() < len;) {
      std::vector<GroundAction> enabled;
      for (const auto& a : actions)
        if (applicable(s, a, f.complete)) enabled.push_back(a);
      p.push_back(enabled[rng() % enabled.size()]);
      s = mlcbp::apply(s, p.back(), f.complete);
    }
    CHECK(as_pairs(extract_causal_pairs(p, f.complete, f.problem.init)) == oracle::causal_links(p));
  }
}

TEST_CASE("under the complete model every achieved goal has a providing chain") {
  DomainModel m = fixtures::load_domain("blocks");
  for (const auto& p : generate_problems({}, m, 20, 31, "chain")) {
    SkeletalPlan s = generate_causal_pairs(p, m);
    REQUIRE(s.all_goals_reachable());
    for (const auto& g : s.goal_plans) {
      if (g.plan.size() < 2) continue;
      // The final action adds the goal; it must be a consumer of some pair
      // unless its preconditions all held initially.
      GroundedAction last = ground(g.plan.back(), m);
      CHECK(last.add.count(g.goal));
      bool consumes = false;
      for (const auto& pair : s.pairs)
        if (pair.consumer == g.plan.back()) consumes = true;
      CHECK((consumes || std::includes(p.init.begin(), p.init.end(), last.pre.begin(), last.pre.end())));
    }
    CHECK(generate_causal_pairs(p, m).pairs == s.pairs);
  }
}
