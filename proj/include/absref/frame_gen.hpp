#ifndef ABSREF_FRAME_GEN_HPP
#define ABSREF_FRAME_GEN_HPP

#include <optional>
#include <vector>

#include "absref/modal.hpp"

namespace absref {

/// Pre-Boolean algebra: subsets of {0..n-1} blown up into clusters of
/// `cluster_size` mutually accessible worlds; (I,i) sees (J,j) iff I ⊆ J.
KripkeFrame gen_preboolean(int n, int cluster_size);

/// Inverted lollipop: pairs (I,J), I ⊆ {0..n-1}, J ⊆ {0..m-1}, plus a top
/// element seen by everyone and seeing only itself; (I,J) sees (I',J')
/// iff I ⊆ I'.
KripkeFrame gen_lollipop(int n, int m);

/// Poset of all 3^n partial functions {0..n-1} -> {0,1} under extension.
KripkeFrame gen_fpf(int n);

/// Relation-preserving bijection between frames, or nullopt. Backtracking
/// with degree pruning.
std::optional<std::vector<int>> order_iso(const KripkeFrame& a, const KripkeFrame& b);

// World-name helpers shared with the labeling constructors: the exact world
// enumeration order of the generators above.
std::vector<std::pair<unsigned, unsigned>> lollipop_nodes(int n, int m);  // excludes the top
std::vector<std::vector<int>> fpf_functions(int n);  // entries -1 (undefined), 0, 1

}  // namespace absref

#endif
