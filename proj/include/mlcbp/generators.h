#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mlcbp/pddl_io.h"
#include "mlcbp/planner.h"
#include "mlcbp/strips.h"

namespace mlcbp {

// Deterministic across standard libraries: raw mt19937_64 output plus
// rejection sampling, no std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  int between(int lo, int hi);
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; derives independent stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct GeneratorConfig {
  std::string domain = "blocks";  // blocks | driverlog | depots
  int min_size = 3;
  int max_size = 6;
  // Random-walk length per unit of size, on top of a small fixed minimum.
  int walk_factor = 4;
};

// Random valid initial state, random walk under the complete model, goal =
// the walk's final atoms of the domain's goal predicates. Retries until the
// goal is not already true initially.
PlanningProblem generate_problem(const GeneratorConfig& config, const DomainModel& model,
                                 Rng& rng, const std::string& name);

std::vector<PlanningProblem> generate_problems(const GeneratorConfig& config,
                                               const DomainModel& model, int count,
                                               std::uint64_t seed, const std::string& prefix);

struct CaseGenReport {
  std::vector<CaseFile> cases;
  int attempted = 0;
  int skipped = 0;
};

// Solves problems with the forward planner under the complete model and
// keeps the self-validated <init, plan, goal> triples. Problems come from
// `sources` in order when given, otherwise from the generator; generation
// stops at `count` cases or when sources run out.
CaseGenReport generate_cases(const DomainModel& model, const GeneratorConfig& config, int count,
                             std::uint64_t seed, const SearchConfig& search,
                             const std::vector<PlanningProblem>* sources = nullptr);

}  // namespace mlcbp
