#ifndef ABSREF_BISIMULATION_HPP
#define ABSREF_BISIMULATION_HPP

#include <utility>
#include <vector>

#include "absref/transition_system.hpp"

namespace absref {

/// Disjoint union of systems over one shared ap set. State names get a
/// "u<i>:" prefix; origin maps union states back to (system, state).
struct DisjointUnion {
  TransitionSystem ts;
  std::vector<int> offset;                   // system -> first union index
  std::vector<std::pair<int, int>> origin;   // union index -> (system, state)
  int index(int system, int state) const { return offset[system] + state; }
};

DisjointUnion disjoint_union(const std::vector<TransitionSystem>& systems);

/// Coarsest bisimulation of the union, with the per-round partitions kept so
/// distinguishing formulas can be rebuilt from the splitter history.
/// rounds.front() is the label partition, rounds.back() the stable one.
struct BisimPartition {
  DisjointUnion subject;
  Partition partition;                  // final, canonical
  std::vector<std::vector<int>> rounds; // block_of per round
};

BisimPartition bisim_classes(const std::vector<TransitionSystem>& systems);

bool bisimilar(const BisimPartition& bp, int u, int v);

}  // namespace absref

#endif
