#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "oracles.h"
#include "mlcbp/strips.h"

using namespace mlcbp;
using fixtures::act;
using fixtures::atom;

TEST_CASE("grounding pickup under the complete blocks model") {
  auto f = fixtures::load_four_blocks();
  GroundedAction g = ground_instantiate(*f.complete.find_schema("pickup"), {{"?x", "b"}}, f.complete);
  CHECK(g.action == act("(pickup b)"));
  CHECK(g.pre == State{atom("(clear b)"), atom("(ontable b)"), atom("(handempty)")});
}

TEST_CASE("grounding a parameterless schema yields the bare name") {
  DomainModel m;
  m.name = "d";
  m.predicates.push_back({"p", {}});
  m.schemas.push_back({"noop", {}, {}, {{"p", {}}}, {}});
  GroundedAction g = ground_instantiate(m.schemas[0], {}, m);
  CHECK(g.action.str() == "(noop)");
  CHECK(g.add == State{GroundAtom{"p", {}}});
}

TEST_CASE("stack b a adds (on b a)") {
  auto f = fixtures::load_four_blocks();
  CHECK(ground(act("(stack b a)"), f.complete).add.count(atom("(on b a)")));
}

TEST_CASE("grounding errors") {
  DomainModel m = fixtures::load_domain("driverlog");
  const ActionSchema& walk = *m.find_schema("walk");
  std::map<std::string, std::string> types = {{"d1", "driver"}, {"s0", "location"}, {"t1", "truck"}};
  CHECK_THROWS_AS(ground_instantiate(walk, {{"?driver", "d1"}, {"?loc-from", "s0"}}, m, types),
                  ModelError);
  CHECK_THROWS_AS(
      ground_instantiate(walk, {{"?driver", "t1"}, {"?loc-from", "s0"}, {"?loc-to", "s0"}}, m, types),
      ModelError);
  CHECK_THROWS_AS(ground(act("(fly a)"), m), ModelError);
}

TEST_CASE("applicability on the four-block initial state") {
  auto f = fixtures::load_four_blocks();
  CHECK(applicable(f.problem.init, act("(pickup b)"), f.complete));
  CHECK_FALSE(applicable(f.problem.init, act("(pickup c)"), f.complete));
  CHECK_FALSE(applicable(State{}, act("(pickup b)"), f.complete));
  CHECK_THROWS_AS(applicable(f.problem.init, act("(jump b)"), f.complete), ModelError);
}

TEST_CASE("apply unstack c a") {
  auto f = fixtures::load_four_blocks();
  State s = apply(f.problem.init, act("(unstack c a)"), f.complete);
  CHECK(s.count(atom("(clear a)")));
  CHECK(s.count(atom("(holding c)")));
  CHECK_FALSE(s.count(atom("(on c a)")));
  CHECK_FALSE(s.count(atom("(handempty)")));
  CHECK_THROWS_AS(apply(f.problem.init, act("(pickup c)"), f.complete), ModelError);
}

TEST_CASE("empty effects leave the state unchanged") {
  DomainModel m;
  m.name = "d";
  m.predicates.push_back({"p", {}});
  m.schemas.push_back({"noop", {}, {}, {}, {}});
  State s{GroundAtom{"p", {}}};
  CHECK(apply(s, GroundAction{"noop", {}}, m) == s);
}

TEST_CASE("execute_plan on the golden solution") {
  auto f = fixtures::load_four_blocks();
  Plan sol = fixtures::plan_of(fixtures::kGoldenSolution);
  ExecutionResult r = execute_plan(f.problem, sol, f.complete);
  CHECK(r.success);
  CHECK(satisfies(r.final_state, f.problem.goal));

  sol.pop_back();
  r = execute_plan(f.problem, sol, f.complete);
  CHECK_FALSE(r.success);
  CHECK(r.failed_step == sol.size());

  PlanningProblem trivial = f.problem;
  trivial.goal = {atom("(on c a)")};
  CHECK(execute_plan(trivial, {}, f.complete).success);

  r = execute_plan(f.problem, fixtures::plan_of("(pickup b) (pickup d)"), f.complete);
  CHECK_FALSE(r.success);
  CHECK(r.failed_step == 1);
}

TEST_CASE("model validation") {
  auto f = fixtures::load_four_blocks();
  CHECK_NOTHROW(f.complete.validate());
  DomainModel bad = f.complete;
  bad.schemas[0].add.push_back(bad.schemas[0].del[0]);
  CHECK_THROWS_AS(bad.validate(), ModelError);
  bad = f.complete;
  bad.schemas[0].pre.push_back({"clear", {"?z"}});
  CHECK_THROWS_AS(bad.validate(), ModelError);
  bad = f.complete;
  bad.schemas.push_back(bad.schemas[0]);
  CHECK_THROWS_AS(bad.validate(), ModelError);
  bad = f.complete;
  bad.schemas[0].pre.push_back({"tall", {"?x"}});
  CHECK_THROWS_AS(bad.validate(), ModelError);
}

TEST_CASE("apply matches the hand-written blocks semantics and preserves the frame") {
  auto f = fixtures::load_four_blocks();
  std::mt19937_64 rng(11);
  const std::vector<std::string> objs = {"a", "b", "c", "d"};
  auto actions = oracle::blocks_actions(objs);
  for (int walk = 0; walk < 50; ++walk) {
    State s = f.problem.init;
    for (int step = 0; step < 12; ++step) {
      std::vector<GroundAction> enabled;
      for (const auto& a : actions) {
        auto e = oracle::blocks_effects(a);
        bool lifted_ok = std::includes(s.begin(), s.end(), e.pre.begin(), e.pre.end());
        REQUIRE(lifted_ok == applicable(s, a, f.complete));
        if (lifted_ok) enabled.push_back(a);
      }
      REQUIRE_FALSE(enabled.empty());
      const GroundAction& a = enabled[rng() % enabled.size()];
      auto e = oracle::blocks_effects(a);
      State next = apply(s, a, f.complete);
      CHECK(next == apply(s, a, f.complete));
      for (const auto& q : s)
        if (!e.add.count(q) && !e.del.count(q)) CHECK(next.count(q));
      for (const auto& q : e.add) CHECK(next.count(q));
      for (const auto& q : e.del)
        if (!e.add.count(q)) CHECK_FALSE(next.count(q));
      s = next;
    }
  }
}

TEST_CASE("every prefix of a successful plan executes") {
  auto f = fixtures::load_four_blocks();
  Plan sol = fixtures::plan_of(fixtures::kGoldenSolution);
  State s = f.problem.init;
  for (const auto& a : sol) {
    REQUIRE(applicable(s, a, f.complete));
    s = mlcbp::apply(s, a, f.complete);
  }
}
