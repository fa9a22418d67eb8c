#pragma once

#include <vector>

#include "mlcbp/mapping.h"
#include "mlcbp/parallel.h"
#include "mlcbp/strips.h"

namespace mlcbp {

struct SequenceEntry {
  int sid = 0;
  Plan sequence;
};

struct SequenceDB {
  std::vector<SequenceEntry> entries;

  // sids are assigned 0..n-1 in fragment order.
  static SequenceDB from_fragments(const std::vector<Fragment>& fragments);
  // Throws Error on duplicate sids.
  void validate() const;
};

struct FrequentPattern {
  Plan actions;
  int support = 0;

  bool operator==(const FrequentPattern&) const = default;
};

// Maximal contiguous patterns with support >= delta, ordered by descending
// length, then lexicographically.
struct FrequentFragmentSet {
  std::vector<FrequentPattern> patterns;
  int delta = 1;
};

// True when `pattern` occurs in `sequence` as a contiguous run.
bool contains_contiguous(const Plan& sequence, const Plan& pattern);

// Number of entries containing `pattern` contiguously; each entry counts once.
int support(const SequenceDB& db, const Plan& pattern);

// Frequent contiguous patterns are grown one action at a time from
// occurrence lists (sid, start); extending by x keeps the occurrences
// followed by x. A pattern is maximal when neither a right nor a left
// one-action extension is frequent, which suffices by anti-monotonicity.
// The parallel path splits the search by first action.
FrequentFragmentSet mine_frequent(const SequenceDB& db, int delta,
                                  Execution exec = Execution::kParallel);

// Canonical order used for FrequentFragmentSet::patterns.
bool pattern_order(const Plan& a, const Plan& b);

}  // namespace mlcbp
