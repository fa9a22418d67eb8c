#pragma once

#include <cstdint>

#include "mlcbp/strips.h"

namespace mlcbp {

struct DegradeSpec {
  double completeness = 1.0;
  std::uint64_t seed = 0;
  bool pre = true;
  bool add = true;
  bool del = true;
};

// Removes ceil((1 - completeness) * N) lifted atom occurrences, N counted over
// the eligible lists of every schema. Removal takes a prefix of one seeded
// shuffle, so for a fixed seed a higher completeness keeps a superset of
// atoms. Names, parameters and predicate declarations are untouched.
DomainModel degrade(const DomainModel& model, const DegradeSpec& spec);

// Number of atoms that `degrade` removes for a model with `eligible` atoms.
std::size_t removal_count(std::size_t eligible, double completeness);

}  // namespace mlcbp
