#include "mlcbp/generators.h"

#include <algorithm>
#include <limits>
#include <set>

namespace mlcbp {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

int Rng::between(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Long enough for depots to move one crate between places.
constexpr int kMinWalk = 8;

GroundAtom atom(std::string pred, std::vector<std::string> args) {
  return {std::move(pred), std::move(args)};
}

std::vector<std::string> numbered(const std::string& stem, int n, int from = 1) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(stem + std::to_string(from + i));
  return out;
}

// Items shuffled and dealt into `stacks` piles, bottom first.
std::vector<std::vector<std::string>> random_towers(std::vector<std::string> items, int stacks,
                                                    Rng& rng) {
  rng.shuffle(items);
  std::vector<std::vector<std::string>> towers(static_cast<std::size_t>(stacks));
  for (auto& item : items) towers[rng.below(static_cast<std::uint64_t>(stacks))].push_back(item);
  return towers;
}

PlanningProblem blocks_init(int n, Rng& rng) {
  PlanningProblem p;
  p.domain_name = "blocks";
  auto blocks = numbered("b", n);
  for (const auto& b : blocks) p.objects.push_back({b, "object"});
  for (const auto& tower : random_towers(blocks, n, rng)) {
    if (tower.empty()) continue;
    p.init.insert(atom("ontable", {tower.front()}));
    for (std::size_t i = 1; i < tower.size(); ++i)
      p.init.insert(atom("on", {tower[i], tower[i - 1]}));
    p.init.insert(atom("clear", {tower.back()}));
  }
  p.init.insert(atom("handempty", {}));
  return p;
}

PlanningProblem driverlog_init(int n, Rng& rng) {
  PlanningProblem p;
  p.domain_name = "driverlog";
  const int num_locations = std::max(3, n);
  auto locations = numbered("s", num_locations, 0);
  auto drivers = numbered("driver", 2);
  auto trucks = numbered("truck", 2);
  auto packages = numbered("package", n);
  for (const auto& x : locations) p.objects.push_back({x, "location"});
  for (const auto& x : drivers) p.objects.push_back({x, "driver"});
  for (const auto& x : trucks) p.objects.push_back({x, "truck"});
  for (const auto& x : packages) p.objects.push_back({x, "obj"});
  auto connect = [&](const std::string& a, const std::string& b) {
    p.init.insert(atom("link", {a, b}));
    p.init.insert(atom("link", {b, a}));
    p.init.insert(atom("path", {a, b}));
    p.init.insert(atom("path", {b, a}));
  };
  for (int i = 1; i < num_locations; ++i)
    connect(locations[static_cast<std::size_t>(i)],
            locations[rng.below(static_cast<std::uint64_t>(i))]);
  auto somewhere = [&]() { return locations[rng.below(locations.size())]; };
  for (const auto& d : drivers) p.init.insert(atom("at", {d, somewhere()}));
  for (const auto& t : trucks) {
    p.init.insert(atom("at", {t, somewhere()}));
    p.init.insert(atom("empty", {t}));
  }
  for (const auto& k : packages) p.init.insert(atom("at", {k, somewhere()}));
  return p;
}

PlanningProblem depots_init(int n, Rng& rng) {
  PlanningProblem p;
  p.domain_name = "depots";
  const std::vector<std::string> places = {"depot0", "distributor0", "distributor1"};
  p.objects.push_back({"depot0", "depot"});
  p.objects.push_back({"distributor0", "distributor"});
  p.objects.push_back({"distributor1", "distributor"});
  auto trucks = numbered("truck", 2, 0);
  auto crates = numbered("crate", n, 0);
  for (const auto& t : trucks) p.objects.push_back({t, "truck"});
  for (std::size_t i = 0; i < places.size(); ++i) {
    std::string pallet = "pallet" + std::to_string(i);
    std::string hoist = "hoist" + std::to_string(i);
    p.objects.push_back({pallet, "pallet"});
    p.objects.push_back({hoist, "hoist"});
    p.init.insert(atom("at", {pallet, places[i]}));
    p.init.insert(atom("at", {hoist, places[i]}));
    p.init.insert(atom("available", {hoist}));
  }
  for (const auto& c : crates) p.objects.push_back({c, "crate"});
  for (const auto& t : trucks) p.init.insert(atom("at", {t, places[rng.below(places.size())]}));
  auto towers = random_towers(crates, static_cast<int>(places.size()), rng);
  for (std::size_t i = 0; i < towers.size(); ++i) {
    std::string below = "pallet" + std::to_string(i);
    for (const auto& c : towers[i]) {
      p.init.insert(atom("at", {c, places[i]}));
      p.init.insert(atom("on", {c, below}));
      below = c;
    }
    p.init.insert(atom("clear", {below}));
  }
  return p;
}

bool is_goal_atom(const std::string& domain, const GroundAtom& a, const PlanningProblem& p) {
  if (domain == "blocks" || domain == "depots") return a.predicate == "on";
  if (domain == "driverlog") {
    if (a.predicate != "at" || a.args.empty()) return false;
    for (const auto& o : p.objects)
      if (o.name == a.args[0]) return o.type == "obj" || o.type == "driver";
  }
  return false;
}

State random_walk(const PlanningProblem& problem, const DomainModel& model, int steps, Rng& rng) {
  GroundTask task(problem, model);
  std::vector<bool> state(task.num_facts(), false);
  for (const auto& a : problem.init) {
    int f = task.fact_id(a);
    if (f >= 0) state[static_cast<std::size_t>(f)] = true;
  }
  const auto& ops = task.operators();
  std::vector<std::size_t> enabled;
  for (int s = 0; s < steps; ++s) {
    enabled.clear();
    for (std::size_t o = 0; o < ops.size(); ++o) {
      bool ok = true;
      for (int f : ops[o].pre) ok = ok && state[static_cast<std::size_t>(f)];
      if (ok) enabled.push_back(o);
    }
    if (enabled.empty()) break;
    const auto& op = ops[enabled[rng.below(enabled.size())]];
    for (int f : op.del) state[static_cast<std::size_t>(f)] = false;
    for (int f : op.add) state[static_cast<std::size_t>(f)] = true;
  }
  State out;
  for (std::size_t f = 0; f < state.size(); ++f)
    if (state[f]) out.insert(task.facts()[f]);
  return out;
}

}  // namespace

PlanningProblem generate_problem(const GeneratorConfig& config, const DomainModel& model,
                                 Rng& rng, const std::string& name) {
  if (config.min_size < 1 || config.max_size < config.min_size)
    throw Error("bad generator size range");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int n = rng.between(config.min_size, config.max_size);
    PlanningProblem p;
    if (config.domain == "blocks") {
      p = blocks_init(n, rng);
    } else if (config.domain == "driverlog") {
      p = driverlog_init(n, rng);
    } else if (config.domain == "depots") {
      p = depots_init(n, rng);
    } else {
      throw Error("unknown generator domain " + config.domain);
    }
    p.name = name;
    p.domain_name = model.name;
    State final_state = random_walk(p, model, config.walk_factor * n + kMinWalk, rng);
    for (const auto& a : final_state)
      if (is_goal_atom(config.domain, a, p)) p.goal.insert(a);
    if (!p.goal.empty() && !satisfies(p.init, p.goal)) return p;
  }
  throw Error("generator could not produce a nontrivial goal");
}

std::vector<PlanningProblem> generate_problems(const GeneratorConfig& config,
                                               const DomainModel& model, int count,
                                               std::uint64_t seed, const std::string& prefix) {
  Rng rng(seed);
  std::vector<PlanningProblem> out;
  for (int i = 0; i < count; ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s%03d", prefix.c_str(), i);
    out.push_back(generate_problem(config, model, rng, name));
  }
  return out;
}

CaseGenReport generate_cases(const DomainModel& model, const GeneratorConfig& config, int count,
                             std::uint64_t seed, const SearchConfig& search,
                             const std::vector<PlanningProblem>* sources) {
  CaseGenReport report;
  Rng rng(seed);
  std::size_t next_source = 0;
  // Generated problems are unbounded; cap attempts so an unsolvable domain
  // cannot loop forever.
  const int max_attempts = count * 10 + 10;
  while (static_cast<int>(report.cases.size()) < count && report.attempted < max_attempts) {
    PlanningProblem problem;
    if (sources != nullptr) {
      if (next_source >= sources->size()) break;
      problem = (*sources)[next_source++];
    } else {
      problem = generate_problem(config, model, rng, "case" + std::to_string(report.attempted));
    }
    ++report.attempted;
    SolveResult r;
    try {
      r = solve(problem, model, search);
    } catch (const GroundingLimit&) {
      ++report.skipped;
      continue;
    }
    if (!r.solved() || r.plan.empty()) {
      ++report.skipped;
      continue;
    }
    CaseFile c;
    c.init = problem.init;
    c.goal = problem.goal;
    c.plan = std::move(r.plan);
    char id[32];
    std::snprintf(id, sizeof(id), "case_%05zu", report.cases.size());
    c.id = id;
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace mlcbp
