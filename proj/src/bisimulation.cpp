#include "absref/bisimulation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "absref/error.hpp"

namespace absref {

DisjointUnion disjoint_union(const std::vector<TransitionSystem>& systems) {
  if (systems.empty()) throw Error("disjoint_union: no systems");
  for (const auto& s : systems)
    if (!s.same_ap(systems.front())) throw Error("disjoint_union: ap sets differ");
  DisjointUnion u;
  u.ts.ap = systems.front().ap;
  for (int i = 0; i < static_cast<int>(systems.size()); ++i) {
    const auto& s = systems[i];
    u.offset.push_back(static_cast<int>(u.ts.states.size()));
    for (int j = 0; j < s.num_states(); ++j) {
      u.ts.states.push_back("u" + std::to_string(i) + ":" + s.states[j]);
      u.ts.labels.push_back(s.labels[j]);
      u.origin.emplace_back(i, j);
    }
    for (const auto& [a, b] : s.transitions)
      u.ts.transitions.emplace_back(u.offset[i] + a, u.offset[i] + b);
    for (int s0 : s.initial) u.ts.initial.push_back(u.offset[i] + s0);
  }
  u.ts.finalize();
  return u;
}

BisimPartition bisim_classes(const std::vector<TransitionSystem>& systems) {
  BisimPartition bp;
  bp.subject = disjoint_union(systems);
  const auto& ts = bp.subject.ts;
  const int n = ts.num_states();

  // Round 0: split by label set.
  std::map<std::vector<int>, int> by_label;
  std::vector<int> block_of(n);
  for (int s = 0; s < n; ++s) {
    auto it = by_label.find(ts.labels[s]);
    if (it == by_label.end()) it = by_label.emplace(ts.labels[s], static_cast<int>(by_label.size())).first;
    block_of[s] = it->second;
  }
  block_of = Partition::from_block_of(block_of).block_of;
  bp.rounds.push_back(block_of);

  // Refine by successor-block signatures until stable.
  for (;;) {
    std::map<std::pair<int, std::set<int>>, int> sig_index;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      std::set<int> succ_blocks;
      for (int t : ts.succ[s]) succ_blocks.insert(block_of[t]);
      std::pair<int, std::set<int>> sig{block_of[s], std::move(succ_blocks)};
      auto it = sig_index.find(sig);
      if (it == sig_index.end()) it = sig_index.emplace(std::move(sig), static_cast<int>(sig_index.size())).first;
      next[s] = it->second;
    }
    next = Partition::from_block_of(next).block_of;
    if (next == block_of) break;
    block_of = std::move(next);
    bp.rounds.push_back(block_of);
  }
  bp.partition = Partition::from_block_of(block_of);
  return bp;
}

bool bisimilar(const BisimPartition& bp, int u, int v) {
  return bp.partition.block_of[u] == bp.partition.block_of[v];
}

}  // namespace absref
