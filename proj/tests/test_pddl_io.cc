#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.h"
#include "mlcbp/generators.h"
#include "mlcbp/pddl_io.h"

using namespace mlcbp;
using fixtures::atom;

TEST_CASE("the blocks domain has the four operators") {
  DomainModel m = fixtures::load_domain("blocks");
  REQUIRE(m.schemas.size() == 4);
  for (const char* name : {"pickup", "putdown", "stack", "unstack"}) CHECK(m.find_schema(name));
  CHECK(m.find_schema("pickup")->pre.size() == 3);
}

TEST_CASE("domain without actions") {
  DomainModel m = parse_domain("(define (domain empty) (:requirements :strips) (:predicates (p)))");
  CHECK(m.schemas.empty());
  CHECK(m.name == "empty");
}

TEST_CASE("unsupported constructs are named") {
  try {
    parse_domain("(define (domain d) (:requirements :adl))");
    FAIL("expected rejection");
  } catch (const UnsupportedFeature& e) {
    CHECK(e.construct() == "requirement :adl");
  }
  CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (p ?x))"
                               " (:action a :parameters (?x) :precondition (not (p ?x))"
                               " :effect (p ?x)))"),
                  UnsupportedFeature);
  CHECK_THROWS_AS(parse_domain("(define (domain d) (:predicates (p ?x))"
                               " (:action a :parameters (?x) :precondition (or (p ?x) (p ?x))"
                               " :effect (p ?x)))"),
                  UnsupportedFeature);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_domain("(define (domain d)\n  (:predicates (p)");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 1);
  }
}

TEST_CASE("the four-block problem") {
  auto f = fixtures::load_four_blocks();
  CHECK(f.problem.objects.size() == 4);
  CHECK(f.problem.init.size() == 8);
  CHECK(f.problem.goal == State{atom("(on b a)"), atom("(on c b)"), atom("(on d c)")});
}

TEST_CASE("problem validation") {
  DomainModel m = fixtures::load_domain("blocks");
  PlanningProblem p = parse_problem(
      "(define (problem p) (:domain blocks) (:objects a) (:init (clear a)) (:goal (and)))", m);
  CHECK(p.goal.empty());
  CHECK_THROWS_AS(parse_problem("(define (problem p) (:domain blocks) (:objects a b)"
                                " (:init (on a)) (:goal (clear a)))",
                                m),
                  ParseError);
  CHECK_THROWS_AS(parse_problem("(define (problem p) (:domain blocks) (:objects a)"
                                " (:init (clear z)) (:goal (clear a)))",
                                m),
                  ParseError);
  CHECK_THROWS_AS(parse_problem("(define (problem p) (:domain blocks) (:objects a)"
                                " (:init (tall a)) (:goal (clear a)))",
                                m),
                  ParseError);
}

TEST_CASE("typed problems check object types") {
  DomainModel m = fixtures::load_domain("driverlog");
  CHECK_NOTHROW(parse_problem("(define (problem p) (:domain driverlog)"
                              " (:objects s0 s1 - location t - truck)"
                              " (:init (at t s0) (link s0 s1)) (:goal (at t s1)))",
                              m));
  CHECK_THROWS_AS(parse_problem("(define (problem p) (:domain driverlog)"
                                " (:objects s0 s1 - location t - truck)"
                                " (:init (at s0 t)) (:goal (at t s1)))",
                                m),
                  ParseError);
}

TEST_CASE("case files") {
  auto f = fixtures::load_four_blocks();
  CHECK(f.p1.plan.size() == 6);
  CHECK(f.p2.plan.size() == 8);
  CaseFile one = parse_case("(:init (clear a) (ontable a) (handempty)) (:goal (holding a)) (:plan (pickup a))");
  CHECK(one.plan.size() == 1);
  CHECK_THROWS_AS(parse_case("(:init) (:goal) (:plan)"), ParseError);
  CHECK_THROWS_AS(parse_case("(:init) (:goal (p))"), ParseError);
  CHECK_THROWS_AS(parse_case("(:init) (:goal (p)) (:plan (a)) (:extra)"), ParseError);

  CaseFile back = parse_case(write_case(f.p2));
  CHECK(back.init == f.p2.init);
  CHECK(back.goal == f.p2.goal);
  CHECK(back.plan == f.p2.plan);
  CHECK(write_case(back) == write_case(f.p2));
}

TEST_CASE("a generated library round-trips byte for byte") {
  DomainModel m = fixtures::load_domain("blocks");
  CaseGenReport report = generate_cases(m, {}, 200, 5, {});
  REQUIRE(report.cases.size() == 200);
  for (const auto& c : report.cases) {
    std::string text = write_case(c);
    CHECK(write_case(parse_case(text)) == text);
  }
}

TEST_CASE("plan files") {
  Plan sol = fixtures::plan_of(fixtures::kGoldenSolution);
  std::string text = write_plan(sol);
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
  CHECK(parse_plan(text) == sol);
  CHECK(write_plan({}).empty());
  CHECK(parse_plan("").empty());
  CHECK(parse_plan("; comment only\n").empty());
  CHECK_THROWS_AS(parse_plan("pickup a\n"), ParseError);
  CHECK_THROWS_AS(parse_plan("(pickup (a))\n"), ParseError);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Plan p;
    for (std::size_t k = rng() % 10; k > 0; --k) {
      GroundAction a{"op" + std::to_string(rng() % 5), {}};
      for (std::size_t n = rng() % 4; n > 0; --n) a.args.push_back("o" + std::to_string(rng() % 7));
      p.push_back(a);
    }
    CHECK(parse_plan(write_plan(p)) == p);
  }
}

TEST_CASE("symbols are lower-cased") {
  Plan p = parse_plan("(PickUp B)");
  CHECK(p[0] == GroundAction{"pickup", {"b"}});
}

TEST_CASE("domains and problems round-trip through the writer") {
  for (const char* name : {"blocks", "driverlog", "depots"}) {
    DomainModel m = fixtures::load_domain(name);
    DomainModel back = parse_domain(write_domain(m));
    CHECK(back == m);
    CHECK(write_domain(back) == write_domain(m));
    GeneratorConfig g;
    g.domain = name;
    for (const auto& p : generate_problems(g, m, 5, 9, "x")) {
      PlanningProblem q = parse_problem(write_problem(p), m);
      CHECK(q.init == p.init);
      CHECK(q.goal == p.goal);
      CHECK(q.objects == p.objects);
      CHECK(write_problem(q) == write_problem(p));
    }
  }
}

TEST_CASE("csv round trip") {
  std::vector<ExperimentRow> rows = {
      {"blocks", 40, 0.6, 15, "s1-p000", true, 12, 3.5},
      {"blocks", 200, 1.0, 5, "s1-p001", false, 0, 0.0},
  };
  std::ostringstream out;
  write_csv(out, rows);
  std::string text = out.str();
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find("blocks,40,0.6,15,s1-p000,true,12,3.500\n") != std::string::npos);
  CHECK(parse_csv(text) == rows);
}

TEST_CASE("the parser never fails with anything but a structured error") {
  std::mt19937_64 rng(17);
  const std::string alphabet = "()?:-; \n\tabcdefxyz01\x01\xff";
  const std::string seed_text = read_file(fixtures::domain_file("blocks"));
  for (int i = 0; i < 3000; ++i) {
    std::string text;
    if (i % 2 == 0) {
      for (std::size_t n = rng() % 80; n > 0; --n) text += alphabet[rng() % alphabet.size()];
    } else {
      text = seed_text;
      for (int k = 0; k < 4; ++k) {
        std::size_t pos = rng() % text.size();
        text[pos] = alphabet[rng() % alphabet.size()];
      }
    }
    try {
      DomainModel m = parse_domain(text);
      (void)parse_problem(text, m);
    } catch (const Error&) {
    }
    try {
      (void)parse_case(text);
    } catch (const Error&) {
    }
    try {
      (void)parse_plan(text);
    } catch (const Error&) {
    }
  }
}
