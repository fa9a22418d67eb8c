#pragma once

#include <optional>
#include <vector>

#include "mlcbp/causal.h"
#include "mlcbp/miner.h"
#include "mlcbp/strips.h"

namespace mlcbp {

// True when `partial` is empty, or a suffix of `partial` equals a prefix of
// `fragment`, or a suffix of `fragment` equals a prefix of `partial`
// (overlap of at least one action).
bool share(const Plan& partial, const Plan& fragment);

// Merges on the longest end overlap. Overlap at the end of `partial` appends
// the rest of `fragment`; overlap at its beginning prepends the head of
// `fragment`. The longer overlap wins; ties append at the end. Throws Error
// when the two do not share.
Plan append(const Plan& partial, const Plan& fragment);

// Drops every pair whose provider occurs before its consumer in `partial`.
CausalPairSet removelinks(const Plan& partial, const CausalPairSet& pairs);

// Removes, one at a time, the first action that cannot be applied while
// simulating from the initial state, re-simulating after each removal; then
// pops trailing actions whose delete list hits a goal atom.
Plan trim(const Plan& partial, const PlanningProblem& problem, const DomainModel& model);

struct AssemblyOptions {
  std::size_t max_nodes = 20000;
};

struct AssemblyResult {
  std::optional<Plan> plan;
  // Plan before trimming, for diagnostics.
  Plan merged;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

// Depth-first concatenation of fragments guided by causal pairs. A fragment
// is a candidate for a pair when it contains either action and shares with
// the current partial plan; a chosen fragment leaves the available set.
// Once no pair remains the partial plan is trimmed and accepted if it
// executes and reaches the goal under `model`. Fragments are tried in the
// given order.
AssemblyResult concat_frag(const PlanningProblem& problem, const DomainModel& model,
                           const CausalPairSet& pairs, const std::vector<Plan>& fragments,
                           const AssemblyOptions& options = {});

AssemblyResult concat_frag(const PlanningProblem& problem, const DomainModel& model,
                           const CausalPairSet& pairs, const FrequentFragmentSet& fragments,
                           const AssemblyOptions& options = {});

}  // namespace mlcbp
