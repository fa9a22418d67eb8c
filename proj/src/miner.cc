#include "mlcbp/miner.h"

#include <algorithm>
#include <map>
#include <set>

namespace mlcbp {

namespace {

struct Occurrence {
  int entry;
  int start;
};

class ContiguousMiner {
 public:
  ContiguousMiner(const SequenceDB& db, int delta) : delta_(delta) {
    std::set<GroundAction> items;
    for (const auto& e : db.entries) items.insert(e.sequence.begin(), e.sequence.end());
    alphabet_.assign(items.begin(), items.end());
    std::map<GroundAction, int> code;
    for (std::size_t i = 0; i < alphabet_.size(); ++i) code[alphabet_[i]] = static_cast<int>(i);
    for (const auto& e : db.entries) {
      std::vector<int> s;
      s.reserve(e.sequence.size());
      for (const auto& a : e.sequence) s.push_back(code[a]);
      seqs_.push_back(std::move(s));
    }
    roots_.resize(alphabet_.size());
    for (std::size_t e = 0; e < seqs_.size(); ++e)
      for (std::size_t p = 0; p < seqs_[e].size(); ++p)
        roots_[seqs_[e][p]].push_back({static_cast<int>(e), static_cast<int>(p)});
  }

  std::size_t num_items() const { return alphabet_.size(); }

  // All maximal patterns whose first action is `item`.
  std::vector<FrequentPattern> mine_from(int item) const {
    std::vector<FrequentPattern> out;
    std::vector<int> pattern{item};
    grow(pattern, roots_[item], out);
    return out;
  }

 private:
  int support_of(const std::vector<Occurrence>& occ) const {
    int n = 0;
    int last = -1;
    for (const auto& o : occ) {  // sorted by entry
      if (o.entry != last) {
        ++n;
        last = o.entry;
      }
    }
    return n;
  }

  bool left_extension_frequent(const std::vector<Occurrence>& occ) const {
    std::map<int, std::set<int>> entries_by_prev;
    for (const auto& o : occ) {
      if (o.start == 0) continue;
      auto& s = entries_by_prev[seqs_[o.entry][o.start - 1]];
      s.insert(o.entry);
      if (static_cast<int>(s.size()) >= delta_) return true;
    }
    return false;
  }

  void grow(std::vector<int>& pattern, const std::vector<Occurrence>& occ,
            std::vector<FrequentPattern>& out) const {
    const int sup = support_of(occ);
    if (sup < delta_) return;
    const std::size_t len = pattern.size();
    std::map<int, std::vector<Occurrence>> children;
    for (const auto& o : occ) {
      std::size_t next = static_cast<std::size_t>(o.start) + len;
      if (next < seqs_[o.entry].size()) children[seqs_[o.entry][next]].push_back(o);
    }
    bool right_maximal = true;
    for (auto& [item, child_occ] : children) {
      if (support_of(child_occ) < delta_) continue;
      right_maximal = false;
      pattern.push_back(item);
      grow(pattern, child_occ, out);
      pattern.pop_back();
    }
    if (right_maximal && !left_extension_frequent(occ)) {
      FrequentPattern fp;
      fp.support = sup;
      for (int i : pattern) fp.actions.push_back(alphabet_[i]);
      out.push_back(std::move(fp));
    }
  }

  int delta_;
  std::vector<GroundAction> alphabet_;
  std::vector<std::vector<int>> seqs_;
  std::vector<std::vector<Occurrence>> roots_;
};

}  // namespace

SequenceDB SequenceDB::from_fragments(const std::vector<Fragment>& fragments) {
  SequenceDB db;
  for (std::size_t i = 0; i < fragments.size(); ++i)
    db.entries.push_back({static_cast<int>(i), fragments[i].actions});
  return db;
}

void SequenceDB::validate() const {
  std::set<int> sids;
  for (const auto& e : entries)
    if (!sids.insert(e.sid).second) throw Error("duplicate sid " + std::to_string(e.sid));
}

bool contains_contiguous(const Plan& sequence, const Plan& pattern) {
  if (pattern.empty()) return true;
  return std::search(sequence.begin(), sequence.end(), pattern.begin(), pattern.end()) !=
         sequence.end();
}

int support(const SequenceDB& db, const Plan& pattern) {
  int n = 0;
  for (const auto& e : db.entries)
    if (contains_contiguous(e.sequence, pattern)) ++n;
  return n;
}

bool pattern_order(const Plan& a, const Plan& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

FrequentFragmentSet mine_frequent(const SequenceDB& db, int delta, Execution exec) {
  if (delta < 1) throw Error("support threshold must be at least 1");
  db.validate();
  ContiguousMiner miner(db, delta);
  const long n = static_cast<long>(miner.num_items());
  std::vector<std::vector<FrequentPattern>> per_item(miner.num_items());
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) per_item[i] = miner.mine_from(static_cast<int>(i));
  } else {
    for (long i = 0; i < n; ++i) per_item[i] = miner.mine_from(static_cast<int>(i));
  }
  FrequentFragmentSet out;
  out.delta = delta;
  for (auto& v : per_item)
    for (auto& p : v) out.patterns.push_back(std::move(p));
  std::sort(out.patterns.begin(), out.patterns.end(),
            [](const FrequentPattern& a, const FrequentPattern& b) {
              return pattern_order(a.actions, b.actions);
            });
  return out;
}

}  // namespace mlcbp
