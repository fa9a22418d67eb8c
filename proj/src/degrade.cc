#include "mlcbp/degrade.h"

#include <cmath>
#include <limits>
#include <random>

namespace mlcbp {

namespace {

enum class ListKind { kPre, kAdd, kDel };

struct Occurrence {
  std::size_t schema;
  ListKind list;
  std::size_t index;
};

// Unbiased draw in [0, bound). Avoids std::uniform_int_distribution, whose
// output is implementation-defined, so shuffles match across toolchains.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::size_t removal_count(std::size_t eligible, double completeness) {
  if (!(completeness >= 0.0 && completeness <= 1.0))
    throw ModelError("completeness must lie in [0, 1]");
  double exact = (1.0 - completeness) * static_cast<double>(eligible);
  // Absorb representation error, e.g. (1 - 0.8) * 10 = 2.0000000000000004.
  auto n = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return n > eligible ? eligible : n;
}

DomainModel degrade(const DomainModel& model, const DegradeSpec& spec) {
  std::vector<Occurrence> eligible;
  for (std::size_t s = 0; s < model.schemas.size(); ++s) {
    const ActionSchema& schema = model.schemas[s];
    if (spec.pre)
      for (std::size_t i = 0; i < schema.pre.size(); ++i) eligible.push_back({s, ListKind::kPre, i});
    if (spec.add)
      for (std::size_t i = 0; i < schema.add.size(); ++i) eligible.push_back({s, ListKind::kAdd, i});
    if (spec.del)
      for (std::size_t i = 0; i < schema.del.size(); ++i) eligible.push_back({s, ListKind::kDel, i});
  }
  const std::size_t remove = removal_count(eligible.size(), spec.completeness);

  std::mt19937_64 rng(spec.seed);
  for (std::size_t i = eligible.size(); i > 1; --i) {
    std::size_t j = bounded(rng, i);
    std::swap(eligible[i - 1], eligible[j]);
  }

  std::vector<std::vector<bool>> drop_pre(model.schemas.size()), drop_add(model.schemas.size()),
      drop_del(model.schemas.size());
  for (std::size_t s = 0; s < model.schemas.size(); ++s) {
    drop_pre[s].assign(model.schemas[s].pre.size(), false);
    drop_add[s].assign(model.schemas[s].add.size(), false);
    drop_del[s].assign(model.schemas[s].del.size(), false);
  }
  for (std::size_t k = 0; k < remove; ++k) {
    const Occurrence& o = eligible[k];
    switch (o.list) {
      case ListKind::kPre: drop_pre[o.schema][o.index] = true; break;
      case ListKind::kAdd: drop_add[o.schema][o.index] = true; break;
      case ListKind::kDel: drop_del[o.schema][o.index] = true; break;
    }
  }

  DomainModel out = model;
  auto filter = [](std::vector<LiftedAtom>& list, const std::vector<bool>& drop) {
    std::vector<LiftedAtom> kept;
    for (std::size_t i = 0; i < list.size(); ++i)
      if (!drop[i]) kept.push_back(std::move(list[i]));
    list = std::move(kept);
  };
  for (std::size_t s = 0; s < out.schemas.size(); ++s) {
    filter(out.schemas[s].pre, drop_pre[s]);
    filter(out.schemas[s].add, drop_add[s]);
    filter(out.schemas[s].del, drop_del[s]);
  }
  out.completeness = spec.completeness;
  return out;
}

}  // namespace mlcbp
